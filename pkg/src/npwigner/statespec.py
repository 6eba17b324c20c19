"""State-spec documents: a small JSON-compatible tree describing a state.

Shape: {"kind": ..., parameters per kind, "cutoff": int | "auto", "tail_tol": float}

kinds and parameters:
    number   {"M": int}
    coherent {"alpha": number | [re, im]}
    cat      {"alpha": number | [re, im]}
    phase    {"M": int, "phi0": radians}
    pure     {"amplitudes": [number | [re, im], ...]}   (normalized on input)
    mixed    {"components": [{"weight": w, "state": <spec>}, ...]}

"cutoff": "auto" (or omitted) grows the basis until the tail mass fits
tail_tol. Mixed components inherit the resolved common cutoff.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .fock import (
    DEFAULT_TAIL_TOL,
    DensityMatrix,
    InvalidStateError,
    density_from_pure,
    make_cat_state,
    make_coherent_state,
    make_number_state,
    make_phase_state,
    minimal_cat_cutoff,
    minimal_coherent_cutoff,
    mix,
    pure_state_from_amplitudes,
)

KINDS = ("number", "coherent", "cat", "phase", "pure", "mixed")


@dataclass(frozen=True)
class BuiltState:
    rho: DensityMatrix
    spec: dict[str, Any]
    tail_mass: float

    @property
    def cutoff(self) -> int:
        return self.rho.cutoff


def _parse_complex(value: Any, name: str) -> complex:
    if isinstance(value, bool):
        raise InvalidStateError(f"{name} must be a number or [re, im], got {value!r}")
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        re, im = value
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in (re, im)):
            return complex(re, im)
    raise InvalidStateError(f"{name} must be a number or [re, im], got {value!r}")


def _echo_complex(z: complex) -> Any:
    return z.real if z.imag == 0.0 else [z.real, z.imag]


def _resolve_cutoff(spec: dict[str, Any]) -> int | None:
    """Explicit cutoff as int, None for auto."""
    cutoff = spec.get("cutoff", "auto")
    if cutoff == "auto" or cutoff is None:
        return None
    if isinstance(cutoff, bool) or not isinstance(cutoff, int):
        raise InvalidStateError(f'cutoff must be an integer or "auto", got {cutoff!r}')
    return cutoff


def _auto_cutoff(spec: dict[str, Any], tail_tol: float) -> int:
    kind = spec.get("kind")
    if kind in ("number", "phase"):
        return int(_require(spec, "M", kind))
    if kind == "coherent":
        alpha = _parse_complex(_require(spec, "alpha", kind), "alpha")
        return minimal_coherent_cutoff(alpha, tail_tol)
    if kind == "cat":
        alpha = _parse_complex(_require(spec, "alpha", kind), "alpha")
        return minimal_cat_cutoff(alpha, tail_tol)
    if kind == "pure":
        amps = spec.get("amplitudes")
        if not isinstance(amps, (list, tuple)) or not amps:
            raise InvalidStateError("pure state needs a non-empty 'amplitudes' list")
        return len(amps) - 1
    if kind == "mixed":
        comps = spec.get("components")
        if not isinstance(comps, (list, tuple)) or not comps:
            raise InvalidStateError("mixed state needs a non-empty 'components' list")
        return max(_resolve_component_cutoff(c, tail_tol) for c in comps)
    raise InvalidStateError(f"unknown state kind {kind!r}; expected one of {KINDS}")


def _resolve_component_cutoff(component: Any, tail_tol: float) -> int:
    if not isinstance(component, dict) or "state" not in component:
        raise InvalidStateError("each mixture component needs 'weight' and 'state'")
    sub = component["state"]
    explicit = _resolve_cutoff(sub)
    return explicit if explicit is not None else _auto_cutoff(sub, tail_tol)


def _require(spec: dict[str, Any], key: str, kind: str) -> Any:
    if key not in spec:
        raise InvalidStateError(f"{kind} state spec is missing {key!r}")
    return spec[key]


def build_state(spec: dict[str, Any], tail_tol: float | None = None) -> BuiltState:
    """Construct a density matrix from a state-spec tree.

    Returns the state together with a normalized echo of the spec (auto
    cutoffs resolved, complex numbers in canonical form) for embedding in
    output metadata.
    """
    if not isinstance(spec, dict):
        raise InvalidStateError(f"state spec must be an object, got {type(spec).__name__}")
    kind = spec.get("kind")
    if kind not in KINDS:
        raise InvalidStateError(f"unknown state kind {kind!r}; expected one of {KINDS}")
    if tail_tol is None:
        tail_tol = float(spec.get("tail_tol", DEFAULT_TAIL_TOL))
    cutoff = _resolve_cutoff(spec)
    if cutoff is None:
        cutoff = _auto_cutoff(spec, tail_tol)

    if kind == "number":
        M = int(_require(spec, "M", kind))
        state = make_number_state(M, cutoff)
        echo: dict[str, Any] = {"kind": kind, "M": M}
    elif kind == "coherent":
        alpha = _parse_complex(_require(spec, "alpha", kind), "alpha")
        state = make_coherent_state(alpha, cutoff, tail_tol)
        echo = {"kind": kind, "alpha": _echo_complex(alpha)}
    elif kind == "cat":
        alpha = _parse_complex(_require(spec, "alpha", kind), "alpha")
        state = make_cat_state(alpha, cutoff, tail_tol)
        echo = {"kind": kind, "alpha": _echo_complex(alpha)}
    elif kind == "phase":
        M = int(_require(spec, "M", kind))
        phi0 = float(_require(spec, "phi0", kind))
        state = make_phase_state(M, phi0, cutoff)
        echo = {"kind": kind, "M": M, "phi0": phi0}
    elif kind == "pure":
        raw = _require(spec, "amplitudes", kind)
        if not isinstance(raw, (list, tuple)) or not raw:
            raise InvalidStateError("pure state needs a non-empty 'amplitudes' list")
        amps = [_parse_complex(a, "amplitude") for a in raw]
        state = pure_state_from_amplitudes(amps, cutoff)
        echo = {"kind": kind, "amplitudes": [_echo_complex(a) for a in amps]}
    else:  # mixed
        comps = _require(spec, "components", kind)
        if not isinstance(comps, (list, tuple)) or not comps:
            raise InvalidStateError("mixed state needs a non-empty 'components' list")
        built, weights, echoes = [], [], []
        for comp in comps:
            if not isinstance(comp, dict) or "weight" not in comp or "state" not in comp:
                raise InvalidStateError("each mixture component needs 'weight' and 'state'")
            weight = comp["weight"]
            if isinstance(weight, bool) or not isinstance(weight, (int, float)):
                raise InvalidStateError(f"component weight must be a number, got {weight!r}")
            sub_spec = dict(comp["state"])
            sub_spec["cutoff"] = cutoff  # mixtures share one basis
            sub = build_state(sub_spec, tail_tol)
            built.append(sub)
            weights.append(float(weight))
            echoes.append({"weight": float(weight), "state": sub.spec})
        rho = mix([(w, b.rho) for w, b in zip(weights, built)])
        tail = sum(w * b.tail_mass for w, b in zip(weights, built))
        echo = {"kind": kind, "components": echoes}
        echo["cutoff"] = cutoff
        echo["tail_tol"] = tail_tol
        return BuiltState(rho, echo, tail)

    echo["cutoff"] = cutoff
    echo["tail_tol"] = tail_tol
    return BuiltState(density_from_pure(state), echo, state.tail_mass)
