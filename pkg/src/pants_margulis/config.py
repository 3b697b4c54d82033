"""JSON job configuration for the command-line interface.

Example::

    {
      "group": {"fricke": {"x": -3, "y": -3, "z": -3}},
      "cocycle": {"boundary_targets": [1, 1, 1]},
      "scan": {"max_len": 12, "tau_zero": 1e-8},
      "check": {"h": 1e-5, "samples": 100, "seed": 0}
    }

``group`` is either ``{"fricke": {"x", "y", "z"}}`` or
``{"matrices": {"a": [[..], [..]], "b": [[..], [..]]}}``. ``cocycle`` is one of
``{"explicit": {"u_a": [3], "u_b": [3]}}``, ``{"boundary_targets": [3]}``,
``{"coboundary": [3]}`` or ``{"random": {"seed": int}}``.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .lorentz_core import IsometryLift, Vec21
from .margulis import TAU_ZERO, Cocycle, coboundary, solve_boundary_cocycle
from .surface_group import HolonomyRep, fricke_construct

GROUP_KINDS = ("fricke", "matrices")
COCYCLE_KINDS = ("explicit", "boundary_targets", "coboundary", "random")


class ConfigError(ValueError):
    pass


def _floats(value, n, where):
    try:
        out = [float(v) for v in value]
    except (TypeError, ValueError):
        raise ConfigError(f"{where}: expected {n} numbers, got {value!r}") from None
    if len(out) != n:
        raise ConfigError(f"{where}: expected {n} numbers, got {len(out)}")
    return out


def _one_of(section: dict, kinds, where):
    if not isinstance(section, dict):
        raise ConfigError(f"{where}: expected an object")
    present = [k for k in kinds if k in section]
    extra = set(section) - set(kinds)
    if len(present) != 1 or extra:
        raise ConfigError(f"{where}: exactly one of {kinds} required, got {sorted(section)}")
    return present[0], section[present[0]]


@dataclass
class GroupSpec:
    kind: str
    fricke: tuple[float, float, float] | None = None
    a: list[list[float]] | None = None
    b: list[list[float]] | None = None

    @classmethod
    def from_dict(cls, d) -> GroupSpec:
        kind, body = _one_of(d, GROUP_KINDS, "group")
        if kind == "fricke":
            if isinstance(body, dict):
                try:
                    body = [body["x"], body["y"], body["z"]]
                except KeyError as exc:
                    raise ConfigError(f"group.fricke: missing {exc}") from None
            return cls("fricke", fricke=tuple(_floats(body, 3, "group.fricke")))
        if not isinstance(body, dict) or set(body) != {"a", "b"}:
            raise ConfigError("group.matrices: expected keys 'a' and 'b'")
        mats = {}
        for k in ("a", "b"):
            rows = body[k]
            if not isinstance(rows, list) or len(rows) != 2:
                raise ConfigError(f"group.matrices.{k}: expected a 2x2 nested list")
            mats[k] = [_floats(r, 2, f"group.matrices.{k}") for r in rows]
        return cls("matrices", a=mats["a"], b=mats["b"])

    def to_dict(self) -> dict:
        if self.kind == "fricke":
            x, y, z = self.fricke
            return {"fricke": {"x": x, "y": y, "z": z}}
        return {"matrices": {"a": self.a, "b": self.b}}

    def build(self) -> HolonomyRep:
        if self.kind == "fricke":
            return fricke_construct(*self.fricke)
        try:
            return HolonomyRep(IsometryLift.from_matrix(self.a), IsometryLift.from_matrix(self.b))
        except ValueError as exc:
            if type(exc) is ValueError:
                raise ConfigError(f"group.matrices: {exc}") from None
            raise


@dataclass
class CocycleSpec:
    kind: str
    values: list[float] = field(default_factory=list)
    seed: int = 0

    @classmethod
    def from_dict(cls, d) -> CocycleSpec:
        kind, body = _one_of(d, COCYCLE_KINDS, "cocycle")
        if kind == "explicit":
            if not isinstance(body, dict) or set(body) != {"u_a", "u_b"}:
                raise ConfigError("cocycle.explicit: expected keys 'u_a' and 'u_b'")
            vals = _floats(body["u_a"], 3, "cocycle.explicit.u_a") + _floats(
                body["u_b"], 3, "cocycle.explicit.u_b"
            )
            return cls(kind, vals)
        if kind == "random":
            seed = body.get("seed", 0) if isinstance(body, dict) else body
            if not isinstance(seed, int) or isinstance(seed, bool):
                raise ConfigError("cocycle.random.seed must be an integer")
            return cls(kind, seed=seed)
        return cls(kind, _floats(body, 3, f"cocycle.{kind}"))

    def to_dict(self) -> dict:
        if self.kind == "explicit":
            return {"explicit": {"u_a": self.values[:3], "u_b": self.values[3:]}}
        if self.kind == "random":
            return {"random": {"seed": self.seed}}
        return {self.kind: list(self.values)}

    def build(self, rep: HolonomyRep) -> Cocycle:
        if self.kind == "explicit":
            return Cocycle.from_array(self.values)
        if self.kind == "boundary_targets":
            return solve_boundary_cocycle(rep, self.values)
        if self.kind == "coboundary":
            return coboundary(rep, Vec21.from_seq(self.values))
        return Cocycle.from_array(np.random.default_rng(self.seed).standard_normal(6))


@dataclass
class ScanOptions:
    max_len: int = 12
    tau_zero: float = TAU_ZERO


@dataclass
class CheckOptions:
    h: float = 1e-5
    samples: int = 100
    seed: int = 0


def _options(cls, d, where):
    if d is None:
        return cls()
    if not isinstance(d, dict):
        raise ConfigError(f"{where}: expected an object")
    known = set(cls.__dataclass_fields__)
    if set(d) - known:
        raise ConfigError(f"{where}: unknown keys {sorted(set(d) - known)}")
    out = cls(**d)
    for name, f in cls.__dataclass_fields__.items():
        v = getattr(out, name)
        want = int if f.type == "int" else float
        if isinstance(v, bool) or not isinstance(v, (int, float)) or (want is int and not isinstance(v, int)):
            raise ConfigError(f"{where}.{name}: expected {want.__name__}, got {v!r}")
        setattr(out, name, want(v))
    return out


@dataclass
class JobConfig:
    group: GroupSpec
    cocycle: CocycleSpec | None = None
    scan: ScanOptions = field(default_factory=ScanOptions)
    check: CheckOptions = field(default_factory=CheckOptions)
    trace_table: dict | None = None

    @classmethod
    def from_dict(cls, d) -> JobConfig:
        if not isinstance(d, dict):
            raise ConfigError("config must be a JSON object")
        known = {"group", "cocycle", "scan", "check", "trace_table"}
        if set(d) - known:
            raise ConfigError(f"unknown top-level keys {sorted(set(d) - known)}")
        if "group" not in d:
            raise ConfigError("missing 'group'")
        tt = d.get("trace_table")
        if tt is not None and not isinstance(tt, dict):
            raise ConfigError("trace_table: expected an object")
        return cls(
            group=GroupSpec.from_dict(d["group"]),
            cocycle=CocycleSpec.from_dict(d["cocycle"]) if "cocycle" in d else None,
            scan=_options(ScanOptions, d.get("scan"), "scan"),
            check=_options(CheckOptions, d.get("check"), "check"),
            trace_table=tt,
        )

    def to_dict(self) -> dict:
        out = {"group": self.group.to_dict()}
        if self.cocycle is not None:
            out["cocycle"] = self.cocycle.to_dict()
        out["scan"] = asdict(self.scan)
        out["check"] = asdict(self.check)
        if self.trace_table is not None:
            out["trace_table"] = self.trace_table
        return out


def load_config(path) -> JobConfig:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
    return JobConfig.from_dict(data)
