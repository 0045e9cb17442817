"""File formats: JSON descriptors and signals in, CSV tables and JSON
manifests out.

Complex CSV cells are "<re><+->*<im>i" with 17 significant digits, which
round-trips IEEE doubles exactly.  JSON dumps sort keys and carry no
timestamps, so identical inputs produce byte-identical outputs.

System descriptors:

  {"moduli": [12], "generators": [[2]]}                    plain subgroup
  {"moduli": [8,8], "L_generators": [[2,0],[0,2]],
   "H_generators": [[[1,0],[1,1]]], "labels": [...],       semidirect system
   "delta_K": [...], "delta_L": [...]}                     (optional weights)
  {"model": "heisenberg", "level": 8, "generators": [[2,0],[0,2]]}
  {"model": "torus", "modulus": 12, "n": 2, "m": 4}
  {"model": "sl2", "sigmas": [[[1,0],[0,1]]], "alpha": 1, "beta": 2,
   "samples": 16, "support_radius": 4}

Signal files:

  {"moduli": [4], "re": [...], "im": [...]}             one value per element
  {"slices": {"<label>": {"re": [...], "im": [...]}}}   per-slice, label-keyed
"""

from __future__ import annotations

import json
import os

import numpy as np

from tauzak.actions import ActingGroup, SemidirectSystem
from tauzak.groups import FiniteAbelianGroup, StructureError, Subgroup
from tauzak.harmonic import Signal
from tauzak.plane import SampledPlaneSystem
from tauzak.showcase import heisenberg_system, torus_system
from tauzak.tau_zak import SemidirectSignal, TauZakField
from tauzak.zak import ZakArray


def format_complex(z: complex) -> str:
    # adding +0.0 turns -0.0 into +0.0, so both kernel backends print alike
    return f"{z.real + 0.0:.17g}{z.imag + 0.0:+.17g}i"


def parse_complex(text: str) -> complex:
    text = text.strip()
    if not text.endswith("i"):
        raise StructureError(f"malformed complex cell {text!r}")
    body = text[:-1]
    for cut in range(len(body) - 1, 0, -1):
        if body[cut] in "+-" and body[cut - 1] not in "eE":
            return complex(float(body[:cut]), float(body[cut:]))
    raise StructureError(f"malformed complex cell {text!r}")


def save_json(path, data) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, sort_keys=True, indent=1)
        fh.write("\n")


def load_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


# ---------------------------------------------------------------------------
# signals

def _values_from_parts(data, size, what) -> np.ndarray:
    re, im = data.get("re"), data.get("im")
    if re is None or im is None:
        raise StructureError(f"{what} needs 're' and 'im' arrays")
    if len(re) != size or len(im) != size:
        raise StructureError(
            f"{what} has {len(re)} real / {len(im)} imaginary entries, "
            f"expected {size}")
    return (np.asarray(re, dtype=np.float64)
            + 1j * np.asarray(im, dtype=np.float64))


def _parts_from_values(values) -> dict:
    return {"re": [float(z.real) for z in values],
            "im": [float(z.imag) for z in values]}


def signal_to_json(signal: Signal) -> dict:
    data = _parts_from_values(signal.values)
    data["moduli"] = list(signal.group.moduli)
    return data


def signal_from_json(group: FiniteAbelianGroup, data) -> Signal:
    if "moduli" in data and tuple(data["moduli"]) != group.moduli:
        raise StructureError(
            f"signal moduli {tuple(data['moduli'])} do not match "
            f"the descriptor's {group.moduli}")
    return Signal(group, _values_from_parts(data, group.order, "signal"))


def sd_signal_to_json(f: SemidirectSignal) -> dict:
    labels = f.system.labels
    return {"slices": {labels[h]: _parts_from_values(f.slice(h).values)
                       for h in f.support}}


def sd_signal_from_json(system: SemidirectSystem, data) -> SemidirectSignal:
    if "slices" not in data:
        raise StructureError("signal file lacks a 'slices' entry")
    index = {label: h for h, label in enumerate(system.labels)}
    slices = {}
    for label, parts in data["slices"].items():
        if label not in index:
            raise StructureError(f"unknown slice label {label!r}")
        values = _values_from_parts(parts, system.group.order, f"slice {label}")
        slices[index[label]] = Signal(system.group, values)
    return SemidirectSignal(system, slices)


# ---------------------------------------------------------------------------
# CSV tables

def _residue_label(residues) -> str:
    return "(" + ";".join(str(int(r)) for r in residues) + ")"


def zak_csv_lines(array: ZakArray) -> list:
    lat = array.lattice
    group = lat.parent
    reps = group.residue_matrix[lat.transversal_indices]
    duals = group.residue_matrix[lat.annihilator().transversal_indices]
    header = "k\\w," + ",".join(_residue_label(r) for r in duals)
    lines = [header]
    for r in range(array.values.shape[0]):
        cells = ",".join(format_complex(z) for z in array.values[r])
        lines.append(_residue_label(reps[r]) + "," + cells)
    return lines


def write_zak_csv(path, array: ZakArray) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(zak_csv_lines(array)) + "\n")


def read_zak_csv(path, lattice: Subgroup) -> ZakArray:
    with open(path, encoding="utf-8") as fh:
        lines = [ln.rstrip("\n") for ln in fh if ln.strip()]
    rows = []
    for line in lines[1:]:
        cells = line.split(",")[1:]
        rows.append([parse_complex(c) for c in cells])
    return ZakArray(lattice, np.asarray(rows, dtype=np.complex128))


def export_field(field: TauZakField, outdir) -> dict:
    """One CSV per supported slice plus a manifest of slices and weights."""
    system = field.system
    os.makedirs(outdir, exist_ok=True)
    slices = []
    for h in field.support:
        label = system.labels[h]
        name = f"slice_{label}.csv"
        write_zak_csv(os.path.join(outdir, name),
                      ZakArray(system.lattice, field.slice_array(h)))
        slices.append({
            "label": label,
            "file": name,
            "delta_K": str(system.delta_K[h]),
            "norm_sq": float(np.sum(np.abs(field.slice_array(h)) ** 2)
                             / len(system.lattice)),
        })
    return {"slices": slices, "norm_sq": field.norm_sq}


# ---------------------------------------------------------------------------
# descriptors

def build_group(descriptor) -> tuple:
    """(group, lattice) from the finite part of a descriptor."""
    if "moduli" not in descriptor:
        raise StructureError("descriptor lacks 'moduli'")
    group = FiniteAbelianGroup(tuple(int(n) for n in descriptor["moduli"]))
    gens = descriptor.get("generators", descriptor.get("L_generators", []))
    lattice = Subgroup(group, [tuple(int(x) for x in g) for g in gens])
    return group, lattice


def build_system(descriptor):
    """A semidirect system or a sampled plane system from a descriptor."""
    model = descriptor.get("model")
    if model == "heisenberg":
        level = int(descriptor.get("level", 8))
        gens = descriptor.get("generators")
        if gens is None:
            return heisenberg_system(level)
        return heisenberg_system(level, tuple(tuple(int(x) for x in g) for g in gens))
    if model == "torus":
        return torus_system(int(descriptor.get("modulus", 12)),
                            int(descriptor.get("n", 2)),
                            int(descriptor.get("m", 4)))
    if model == "sl2":
        return SampledPlaneSystem(
            descriptor.get("sigmas", [((1, 0), (0, 1)), ((1, 1), (0, 1))]),
            alpha=descriptor.get("alpha", 1),
            beta=descriptor.get("beta", 2),
            samples=int(descriptor.get("samples", 16)),
            support_radius=int(descriptor.get("support_radius", 4)))
    if model is not None:
        raise StructureError(f"unknown model {model!r}")

    group, lattice = build_group(descriptor)
    acting_gens = descriptor.get("H_generators", [])
    acting = ActingGroup.from_generators(
        group, [tuple(tuple(int(x) for x in row) for row in g) for g in acting_gens],
        labels=descriptor.get("labels"))
    return SemidirectSystem(acting, lattice,
                            delta_K=descriptor.get("delta_K"),
                            delta_L=descriptor.get("delta_L"))
