"""Config document parsing and the built-in demo configurations.

Configs are JSON documents validated against :data:`CONFIG_SCHEMA`
(also shipped as ``config.schema.json``).  Every validation failure is
raised as :class:`SpecValidationError` carrying the dotted path of the
offending field.
"""
from __future__ import annotations

import copy
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import jsonschema

from .closure import ClosureConfig
from .controllability import sample_random_coupling
from .errors import DegenerateSamplerError, SpecValidationError
from .model import AccessorSpec, CouplingSpec, SystemSpec

CONFIG_SCHEMA = json.loads(resources.files(__package__).joinpath("config.schema.json").read_text())

DEMOS = {
    "two-level": {
        "system": {"levels": [{"energy": -2.0, "degeneracy": 1}, {"energy": 1.0, "degeneracy": 2}]},
        "accessor": {"qubits": 2, "frequencies": [1.0, 1.0], "chain_couplings": [1.0]},
        "interaction": {"random": {"seed": 1, "range": [-1.0, 1.0]}},
    },
    "three-level": {
        "system": {"levels": [
            {"energy": -4.0, "degeneracy": 1},
            {"energy": 1.0, "degeneracy": 2},
            {"energy": 1.0, "degeneracy": 2},
        ]},
        "accessor": {"qubits": 3, "frequencies": [1.0, 1.0, 1.0], "chain_couplings": [1.0, 1.0]},
        "interaction": {"random": {"seed": 1, "range": [-1.0, 1.0]}},
    },
}


@dataclass(frozen=True)
class RunConfig:
    system: SystemSpec
    accessor: AccessorSpec
    coupling: CouplingSpec
    closure: ClosureConfig
    output_format: str = "human"
    output_path: str | None = None
    seed: int | None = None


def _path(parts) -> str:
    out = ""
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out or "<root>"


def demo_document(name: str) -> dict:
    try:
        return copy.deepcopy(DEMOS[name])
    except KeyError:
        raise SpecValidationError(f"unknown demo {name!r}; choose from {sorted(DEMOS)}", "demo") from None


def load_document(path: str | Path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SpecValidationError(f"cannot read config: {exc.strerror}", "config") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecValidationError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}",
                                  "config") from None


def parse_document(doc: dict, seed: int | None = None) -> RunConfig:
    """Validate ``doc`` and build the specs; ``seed`` overrides ``interaction.random.seed``."""
    validator = jsonschema.Draft202012Validator(CONFIG_SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise SpecValidationError(err.message, _path(err.absolute_path))

    sys_doc = doc["system"]
    levels = sys_doc["levels"]
    system = SystemSpec(
        tuple(lv["energy"] for lv in levels),
        tuple(lv["degeneracy"] for lv in levels),
        allow_degenerate_ground=sys_doc.get("allow_degenerate_ground", False),
    )
    acc = doc["accessor"]
    accessor = AccessorSpec(acc["qubits"], tuple(acc["frequencies"]), tuple(acc["chain_couplings"]))

    inter = doc["interaction"]
    if "entries" in inter:
        coupling = CouplingSpec.from_list(inter["entries"])
        used_seed = None
    else:
        rnd = inter["random"]
        used_seed = rnd["seed"] if seed is None else seed
        lo, hi = rnd.get("range", [-1.0, 1.0])
        if lo > hi:
            raise SpecValidationError("range lower bound exceeds upper bound", "interaction.random.range")
        try:
            coupling = sample_random_coupling(system, accessor, used_seed, (lo, hi))
        except DegenerateSamplerError as exc:
            raise SpecValidationError(str(exc), "interaction.random") from None
    coupling.validate(system, accessor)

    cl = doc.get("closure", {})
    closure_cfg = ClosureConfig(
        independence_tol=cl.get("independence_tol", 1e-8),
        early_stop=cl.get("early_stop", True),
        max_basis=cl.get("max_basis"),
        workers=cl.get("workers", 1),
    )
    out = doc.get("output", {})
    return RunConfig(system, accessor, coupling, closure_cfg,
                     out.get("format", "human"), out.get("path"), used_seed)


def specs_to_document(system: SystemSpec, accessor: AccessorSpec, coupling: CouplingSpec) -> dict:
    """Inverse of :func:`parse_document` for explicit-entry interactions."""
    doc = {
        "system": {"levels": [{"energy": e, "degeneracy": b}
                              for e, b in zip(system.energies, system.degeneracies)]},
        "accessor": {"qubits": accessor.n_qubits,
                     "frequencies": list(accessor.frequencies),
                     "chain_couplings": list(accessor.chain_couplings)},
        "interaction": {"entries": coupling.to_list()},
    }
    if system.allow_degenerate_ground:
        doc["system"]["allow_degenerate_ground"] = True
    return doc
