"""JSON model configuration.

Complex numbers are written as ``[re, im]`` (a bare real number is also
accepted) and matrices as nested row-major arrays of such entries::

    {
      "dimension": 2,
      "operators": {"C": [[0, 1], [0, 0]], "F": [[0, 0], [0, 0]]},
      "bath": {"gamma": 1.0, "sigma": 0.0, "n": 1.0, "m": [0.5, 0], "alpha": [0, 0]},
      "run": {"t_max": 5.0, "steps": 100, "dt": 0.001, "fock_dim": 4}
    }

Besides C and F, ``operators`` may carry one coefficient presentation: the
time-ordered E11, E10, E01, E00; the normal-ordered L11, L10, L01, L00; or
the Hudson-Parthasarathy W, H, L.  Optional top-level keys are ``rho0``
(initial density matrix) and ``observables`` (name -> matrix).
"""
import json
from dataclasses import dataclass, field

import numpy as np

from .bath import GaussianBathParams
from .coeffs import HPParams, NormalOrderedCoeffs, TimeOrderedCoeffs, hp_to_normal, time_to_normal
from .generator import GaussianModel

PRESENTATIONS = {
    "time_ordered": ("E11", "E10", "E01", "E00"),
    "normal_ordered": ("L11", "L10", "L01", "L00"),
    "hp": ("W", "H", "L"),
}
RUN_DEFAULTS = {"t_max": 1.0, "steps": 100, "dt": 1e-3, "fock_dim": 4, "halvings": 2}


class ConfigError(ValueError):
    """Malformed configuration; ``where`` names the offending field or line."""

    def __init__(self, where, message):
        super().__init__(f"{where}: {message}")
        self.where = where


def parse_complex(value, where):
    if isinstance(value, bool):
        raise ConfigError(where, f"expected a number or [re, im], got {value!r}")
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, list) and len(value) == 2 and all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in value
    ):
        return complex(value[0], value[1])
    raise ConfigError(where, f"expected a number or [re, im], got {value!r}")


def parse_matrix(value, dim, where):
    if not isinstance(value, list) or len(value) != dim:
        raise ConfigError(where, f"expected {dim} rows")
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != dim:
            raise ConfigError(f"{where}[{i}]", f"expected a row of {dim} entries")
        rows.append([parse_complex(v, f"{where}[{i}][{j}]") for j, v in enumerate(row)])
    A = np.array(rows, dtype=complex)
    if not np.all(np.isfinite(A)):
        raise ConfigError(where, "non-finite entry")
    return A


def _number(section, key, where, default=None, kind=float):
    path = key if where == "<root>" else f"{where}.{key}"
    if key not in section:
        if default is None:
            raise ConfigError(path, "missing required field")
        return default
    v = section[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(path, f"expected a number, got {v!r}")
    if kind is int and int(v) != v:
        raise ConfigError(path, f"expected an integer, got {v!r}")
    return kind(v)


@dataclass
class ModelConfig:
    dimension: int
    C: np.ndarray
    F: np.ndarray
    bath: GaussianBathParams
    presentation: str = None
    coefficients: dict = field(default_factory=dict)
    run: dict = field(default_factory=lambda: dict(RUN_DEFAULTS))
    rho0: np.ndarray = None
    observables: dict = field(default_factory=dict)

    def model(self):
        return GaussianModel(self.C, self.F, self.bath)

    def time_ordered(self):
        if self.presentation == "time_ordered":
            c = self.coefficients
            return TimeOrderedCoeffs(c["E11"], c["E10"], c["E01"], c["E00"], self.bath.kappa)
        if self.presentation is None:
            return TimeOrderedCoeffs.from_hamiltonian(self.C, self.F, self.bath.kappa)
        return None

    def normal_ordered(self):
        """Normal-ordered coefficients of whichever presentation was given."""
        c = self.coefficients
        if self.presentation == "normal_ordered":
            return NormalOrderedCoeffs(c["L11"], c["L10"], c["L01"], c["L00"], self.bath.gamma)
        if self.presentation == "hp":
            return hp_to_normal(HPParams(c["W"], c["H"], c["L"], self.bath.gamma))
        return time_to_normal(self.time_ordered())


def parse_config(data):
    if not isinstance(data, dict):
        raise ConfigError("<root>", "expected a JSON object")
    d = _number(data, "dimension", "<root>", kind=int)
    if d < 1:
        raise ConfigError("dimension", "must be >= 1")

    ops = data.get("operators")
    if not isinstance(ops, dict):
        raise ConfigError("operators", "missing or not an object")
    for req in ("C", "F"):
        if req not in ops:
            raise ConfigError("operators", f"missing required operator '{req}'")
    known = {"C", "F"}.union(*PRESENTATIONS.values())
    for key in ops:
        if key not in known:
            raise ConfigError(f"operators.{key}", "unknown operator name")
    mats = {k: parse_matrix(v, d, f"operators.{k}") for k, v in ops.items()}

    given = [p for p, names in PRESENTATIONS.items() if any(n in mats for n in names)]
    if len(given) > 1:
        raise ConfigError("operators", f"more than one coefficient presentation given: {given}")
    presentation = given[0] if given else None
    coefficients = {}
    if presentation:
        for name in PRESENTATIONS[presentation]:
            if name not in mats:
                raise ConfigError("operators", f"{presentation} presentation is missing '{name}'")
            coefficients[name] = mats[name]

    bsec = data.get("bath")
    if not isinstance(bsec, dict):
        raise ConfigError("bath", "missing or not an object")
    bath = GaussianBathParams(
        gamma=_number(bsec, "gamma", "bath"),
        sigma=_number(bsec, "sigma", "bath", default=0.0),
        n=_number(bsec, "n", "bath", default=0.0),
        m=parse_complex(bsec.get("m", 0.0), "bath.m"),
        alpha=parse_complex(bsec.get("alpha", 0.0), "bath.alpha"),
    )

    rsec = data.get("run", {})
    if not isinstance(rsec, dict):
        raise ConfigError("run", "not an object")
    run = {
        "t_max": _number(rsec, "t_max", "run", default=RUN_DEFAULTS["t_max"]),
        "steps": _number(rsec, "steps", "run", default=RUN_DEFAULTS["steps"], kind=int),
        "dt": _number(rsec, "dt", "run", default=RUN_DEFAULTS["dt"]),
        "fock_dim": _number(rsec, "fock_dim", "run", default=RUN_DEFAULTS["fock_dim"], kind=int),
        "halvings": _number(rsec, "halvings", "run", default=RUN_DEFAULTS["halvings"], kind=int),
    }

    rho0 = parse_matrix(data["rho0"], d, "rho0") if "rho0" in data else None
    obs_sec = data.get("observables", {})
    if not isinstance(obs_sec, dict):
        raise ConfigError("observables", "expected an object of name -> matrix")
    observables = {}
    for name, mat in obs_sec.items():
        if not name.isidentifier():
            raise ConfigError(f"observables.{name}", "names must be identifiers (used as CSV columns)")
        observables[name] = parse_matrix(mat, d, f"observables.{name}")

    return ModelConfig(
        dimension=d,
        C=mats["C"],
        F=mats["F"],
        bath=bath,
        presentation=presentation,
        coefficients=coefficients,
        run=run,
        rho0=rho0,
        observables=observables,
    )


def load_config(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(str(path), f"cannot read config ({exc.strerror})") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"line {exc.lineno}, column {exc.colno}", exc.msg) from exc
    return parse_config(data)


def complex_to_json(z):
    z = complex(z)
    return [z.real, z.imag]


def matrix_to_json(A):
    return [[complex_to_json(v) for v in row] for row in np.asarray(A)]


def config_to_json(cfg):
    """Serialize a ModelConfig back into the on-disk structure."""
    ops = {"C": matrix_to_json(cfg.C), "F": matrix_to_json(cfg.F)}
    for name, A in cfg.coefficients.items():
        ops[name] = matrix_to_json(A)
    b = cfg.bath
    out = {
        "dimension": cfg.dimension,
        "operators": ops,
        "bath": {
            "gamma": b.gamma,
            "sigma": b.sigma,
            "n": b.n,
            "m": complex_to_json(b.m),
            "alpha": complex_to_json(b.alpha),
        },
        "run": dict(cfg.run),
    }
    if cfg.rho0 is not None:
        out["rho0"] = matrix_to_json(cfg.rho0)
    if cfg.observables:
        out["observables"] = {k: matrix_to_json(v) for k, v in cfg.observables.items()}
    return out
