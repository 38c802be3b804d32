"""Run configuration: JSON schema validation and object construction.

A config file fully determines a code and the decoder options; the
simulation block adds seeded-trial parameters.  `load_config` is the
only entry point the CLI uses; every malformed input surfaces as
ConfigError with a location string.
"""

import json
from dataclasses import dataclass, field as _dcfield
from importlib import resources

import jsonschema

from .curve import Divisor, PlaneCurve, ProjectivePoint
from .errors import AgkeqError, ConfigError
from .gf import Field

_POINT = {
    "type": "array",
    "minItems": 3,
    "maxItems": 3,
    "items": {"type": ["string", "integer"]},
}

_DIVISOR = {
    "type": "array",
    "items": {
        "type": "array",
        "minItems": 2,
        "maxItems": 2,
        "prefixItems": [_POINT, {"type": "integer"}],
    },
}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["field", "curve", "code"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string"},
        "field": {
            "type": "object",
            "required": ["p", "degree", "modulus"],
            "additionalProperties": False,
            "properties": {
                "p": {"type": "integer", "minimum": 2},
                "degree": {"type": "integer", "minimum": 1},
                "modulus": {
                    "type": "array",
                    "items": {"type": "integer"},
                    "minItems": 2,
                },
            },
        },
        "curve": {"type": "string"},
        "code": {
            "type": "object",
            "required": ["G", "D", "P_inf"],
            "additionalProperties": False,
            "properties": {
                "G": _DIVISOR,
                "D": {"oneOf": [{"const": "all-affine"}, {"type": "array", "items": _POINT}]},
                "P_inf": _POINT,
            },
        },
        "decoder": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "F0": {"oneOf": [{"type": "null"}, _DIVISOR]},
                "branch_i_divisor": {"enum": ["G", "Gr"]},
                "strassen_crossover": {"type": "integer", "minimum": 1},
            },
        },
        "simulation": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "weights": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                "trials": {"type": "integer", "minimum": 1},
                "seed": {"type": "integer", "minimum": 0},
                "ke_only": {"type": "boolean"},
            },
        },
        "reference": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "y1": {"type": "array", "items": {"type": "string"}},
                "c0": {"type": "array", "items": {"type": "string"}},
                "f": {"type": "string"},
                "f_num": {"type": "string"},
                "f_den": {"type": "string"},
                "g": {"type": "string"},
                "g_num": {"type": "string"},
                "g_den": {"type": "string"},
                "lambda": {"type": "string"},
                "y2": {"type": "array", "items": {"type": "string"}},
                "round0_i_set": {"type": "array", "items": {"type": "integer"}},
                "error_weight": {"type": "integer", "minimum": 0},
                "params": {
                    "type": "object",
                    "additionalProperties": {"type": "integer"},
                },
            },
        },
    },
}


@dataclass
class SimulationSpec:
    weights: list | None = None
    trials: int = 100
    seed: int = 1
    ke_only: bool = False


@dataclass
class RunConfig:
    name: str
    field: Field
    curve: PlaneCurve
    gdiv: Divisor
    dpoints: list
    pinf: ProjectivePoint
    f0: Divisor | None
    branch_i_divisor: str
    strassen_crossover: int
    sim: SimulationSpec
    reference: dict | None
    raw: dict = _dcfield(repr=False, default_factory=dict)

    def build_plan(self):
        from .decoder import DecoderPlan

        return DecoderPlan.build(
            self.curve,
            self.dpoints,
            self.gdiv,
            pinf=self.pinf,
            f0=self.f0,
            branch_i_divisor=self.branch_i_divisor,
        )

    def parse_vector(self, items, length=None):
        """Element strings/codes -> numpy code vector."""
        import numpy as np

        from .linalg import code_dtype

        vec = np.array([self.field.element(s).code for s in items], dtype=code_dtype(self.field))
        if length is not None and vec.shape != (length,):
            raise ConfigError(f"expected a vector of length {length}, got {vec.shape[0]}")
        return vec


def _point(field, curve, spec, where):
    try:
        pt = ProjectivePoint(field, *[field.element(c).code for c in spec])
    except AgkeqError as exc:
        raise ConfigError(f"{where}: bad point {spec!r}: {exc}") from exc
    if curve.form.eval_codes(*pt.coords) != 0:
        raise ConfigError(f"{where}: point {pt!r} is not on the curve")
    return pt


def _divisor(field, curve, entries, where):
    pairs = []
    for k, (pspec, mult) in enumerate(entries):
        pairs.append((_point(field, curve, pspec, f"{where}[{k}]"), int(mult)))
    return Divisor(pairs)


def parse_config(data, where="config"):
    """Validated dict -> RunConfig; raises ConfigError on any problem."""
    try:
        jsonschema.validate(data, SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "(root)"
        raise ConfigError(f"{where}: at {path}: {exc.message}") from exc
    fspec = data["field"]
    try:
        field = Field((fspec["p"], fspec["degree"], tuple(fspec["modulus"])))
        curve = PlaneCurve(field, data["curve"])
    except AgkeqError as exc:
        raise ConfigError(f"{where}: {exc}") from exc
    code = data["code"]
    gdiv = _divisor(field, curve, code["G"], f"{where}: code/G")
    pinf = _point(field, curve, code["P_inf"], f"{where}: code/P_inf")
    if code["D"] == "all-affine":
        gsupp = {p for p, _ in gdiv.items()}
        dpoints = [
            p
            for p in curve.rational_points()
            if p.coords[2] != 0 and p not in gsupp and p != pinf
        ]
    else:
        dpoints = [_point(field, curve, s, f"{where}: code/D[{j}]") for j, s in enumerate(code["D"])]
        if len(set(dpoints)) != len(dpoints):
            raise ConfigError(f"{where}: code/D lists a point twice")
    dec = data.get("decoder", {})
    f0 = None
    if dec.get("F0") is not None:
        f0 = _divisor(field, curve, dec["F0"], f"{where}: decoder/F0")
    sim_data = data.get("simulation", {})
    sim = SimulationSpec(
        weights=list(sim_data["weights"]) if "weights" in sim_data else None,
        trials=sim_data.get("trials", 100),
        seed=sim_data.get("seed", 1),
        ke_only=sim_data.get("ke_only", False),
    )
    return RunConfig(
        name=data.get("name", "run"),
        field=field,
        curve=curve,
        gdiv=gdiv,
        dpoints=dpoints,
        pinf=pinf,
        f0=f0,
        branch_i_divisor=dec.get("branch_i_divisor", "G"),
        strassen_crossover=dec.get("strassen_crossover", 64),
        sim=sim,
        reference=data.get("reference"),
        raw=data,
    )


def load_config(path):
    """Read and validate a JSON config file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return parse_config(data, where=str(path))


def load_fixture(name):
    """Bundled config by name ('klein_f8' or 'hermitian_f16')."""
    ref = resources.files("agkeq.fixtures").joinpath(f"{name}.json")
    try:
        data = json.loads(ref.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise ConfigError(f"no bundled fixture named {name!r}") from exc
    return parse_config(data, where=f"fixture:{name}")
