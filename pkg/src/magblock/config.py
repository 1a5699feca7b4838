"""Flat sectioned key=value run configuration.

The format is a small INI subset: ``[section]`` headers, ``key = value``
pairs, blank lines and ``#``/``;`` comments.  Sections are ``[system]``,
``[cavity]``, ``[sweep]``, ``[solver]`` and ``[output]``; unknown sections or
keys are rejected with the offending line number.  All frequencies are in
the divided-by-2pi MHz convention used across the package.

An empty document resolves to the standard operating defaults (resonant
qubit/magnon, lambda = 10, intrinsic decays 1, mu = nu = 1, tau = Gamma = 5,
phi = 0).  The presence of a ``[cavity]`` section switches solves to the
three-mode model.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .params import CavityParams, SystemParams
from .sweeps import DIRECTION_THETA, SweepAxis, SweepSpec

__all__ = [
    "ConfigError",
    "SolverOptions",
    "RunConfig",
    "parse_config",
    "serialize_config",
    "explain_config",
]


class ConfigError(ValueError):
    """Configuration problem, carrying the key path and line number."""

    def __init__(self, message: str, key: str | None = None, line: int | None = None):
        self.key = key
        self.line = line
        parts = []
        if key:
            parts.append(f"key {key!r}")
        if line is not None:
            parts.append(f"line {line}")
        suffix = f" ({', '.join(parts)})" if parts else ""
        super().__init__(message + suffix)


@dataclass(frozen=True)
class SolverOptions:
    method: str = "trace-replacement"
    threads: int | None = None


@dataclass(frozen=True)
class RunConfig:
    system: SystemParams = field(default_factory=SystemParams)
    cavity: CavityParams | None = None
    sweep: SweepSpec | None = None
    solver: SolverOptions = field(default_factory=SolverOptions)
    output: str | None = None


@dataclass
class _Entry:
    value: str
    line: int
    used: bool = False


_SECTIONS = ("system", "cavity", "sweep", "solver", "output")

_SYSTEM_KEYS = (
    "omega_q", "omega_b", "lambda", "gamma_in", "kappa_in", "tau", "gamma_diss",
    "mu", "nu", "theta", "phi", "xi", "drive_scale", "delta", "omega_d", "n_fock",
)
_CAVITY_KEYS = ("omega_c", "beta_in", "zeta", "n_fock_c")
_SWEEP_KEYS = ("axis1", "axis2", "directions")
_SOLVER_KEYS = ("method", "threads")
_OUTPUT_KEYS = ("path",)

_KEYS = {
    "system": _SYSTEM_KEYS,
    "cavity": _CAVITY_KEYS,
    "sweep": _SWEEP_KEYS,
    "solver": _SOLVER_KEYS,
    "output": _OUTPUT_KEYS,
}


def _scan(text: str) -> dict[str, dict[str, _Entry]]:
    sections: dict[str, dict[str, _Entry]] = {}
    current: str | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith(("#", ";")):
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigError("malformed section header", line=lineno)
            name = line[1:-1].strip().lower()
            if name not in _SECTIONS:
                raise ConfigError(f"unknown section [{name}]", line=lineno)
            current = name
            sections.setdefault(name, {})
            continue
        if "=" not in line:
            raise ConfigError("expected 'key = value'", line=lineno)
        if current is None:
            raise ConfigError("key outside any section", line=lineno)
        key, _, value = line.partition("=")
        key = key.strip().lower()
        if key not in _KEYS[current]:
            raise ConfigError(f"unknown key", key=f"{current}.{key}", line=lineno)
        if key in sections[current]:
            raise ConfigError("duplicate key", key=f"{current}.{key}", line=lineno)
        sections[current][key] = _Entry(value.strip(), lineno)
    return sections


def _as_float(entry: _Entry, path: str) -> float:
    try:
        return float(entry.value)
    except ValueError:
        raise ConfigError(
            f"expected a number, got {entry.value!r}", key=path, line=entry.line
        ) from None


def _as_int(entry: _Entry, path: str) -> int:
    try:
        return int(entry.value)
    except ValueError:
        raise ConfigError(
            f"expected an integer, got {entry.value!r}", key=path, line=entry.line
        ) from None


class _Resolver:
    """Pulls typed values out of one section, tracking use and provenance."""

    def __init__(self, sections, name: str, trace: list[str]):
        self.entries = sections.get(name, {})
        self.name = name
        self.trace = trace

    def has(self, key: str) -> bool:
        return key in self.entries

    def _record(self, key: str, value, entry: _Entry | None):
        source = "default" if entry is None else f"line {entry.line}"
        self.trace.append(f"{self.name}.{key} = {value!r}  [{source}]")

    def take(self, key: str, default, kind: str = "float"):
        entry = self.entries.get(key)
        if entry is None:
            self._record(key, default, None)
            return default
        entry.used = True
        path = f"{self.name}.{key}"
        if kind == "float":
            value = _as_float(entry, path)
        elif kind == "int":
            value = _as_int(entry, path)
        else:
            value = entry.value
        self._record(key, value, entry)
        return value

    def entry(self, key: str) -> _Entry | None:
        e = self.entries.get(key)
        if e is not None:
            e.used = True
        return e

    def require_nonnegative(self, key: str, value: float):
        if value < 0:
            entry = self.entries.get(key)
            raise ConfigError(
                f"{key} must be nonnegative, got {value}",
                key=f"{self.name}.{key}",
                line=entry.line if entry else None,
            )


def _parse_axis(entry: _Entry, path: str) -> SweepAxis:
    parts = [p.strip() for p in entry.value.split(",")]
    if len(parts) != 4:
        raise ConfigError(
            "axis must be 'name, start, stop, count'", key=path, line=entry.line
        )
    name = parts[0].lower()
    try:
        start, stop = float(parts[1]), float(parts[2])
        count = int(parts[3])
    except ValueError:
        raise ConfigError("bad axis numbers", key=path, line=entry.line) from None
    try:
        return SweepAxis(name, start, stop, count)
    except ValueError as exc:
        raise ConfigError(str(exc), key=path, line=entry.line) from None


def parse_config(text: str, overrides=()) -> RunConfig:
    """Parse a config document (optionally with (section, key, value) overrides)."""
    config, _ = _resolve(text, overrides)
    return config


def explain_config(text: str, overrides=()) -> str:
    """Render the full resolution trace: every field, its value and source."""
    _, trace = _resolve(text, overrides)
    return "\n".join(trace)


def _resolve(text: str, overrides=()) -> tuple[RunConfig, list[str]]:
    sections = _scan(text)
    for section, key, value in overrides:
        section = section.lower()
        key = key.lower()
        if section not in _SECTIONS or key not in _KEYS[section]:
            raise ConfigError("unknown key", key=f"{section}.{key}", line=0)
        sections.setdefault(section, {})[key] = _Entry(str(value), 0)

    trace: list[str] = []
    sys_r = _Resolver(sections, "system", trace)
    defaults = SystemParams()

    omega_q = sys_r.take("omega_q", defaults.omega_q)
    omega_b = sys_r.take("omega_b", defaults.omega_b)
    lam = sys_r.take("lambda", defaults.lam)
    gamma_in = sys_r.take("gamma_in", defaults.gamma_in)
    kappa_in = sys_r.take("kappa_in", defaults.kappa_in)
    mu = sys_r.take("mu", defaults.mu)
    nu = sys_r.take("nu", defaults.nu)
    for key, value in (("gamma_in", gamma_in), ("kappa_in", kappa_in),
                       ("mu", mu), ("nu", nu)):
        sys_r.require_nonnegative(key, value)

    if sys_r.has("tau") and sys_r.has("gamma_diss"):
        entry = sys_r.entry("gamma_diss")
        raise ConfigError(
            "tau and gamma_diss are two names for the same knob; set one",
            key="system.gamma_diss", line=entry.line,
        )
    if sys_r.has("gamma_diss"):
        entry = sys_r.entry("gamma_diss")
        if mu != 1.0 or nu != 1.0:
            raise ConfigError(
                "gamma_diss is only a direct knob under mu = nu = 1",
                key="system.gamma_diss", line=entry.line,
            )
        tau = _as_float(entry, "system.gamma_diss")
        trace.append(f"system.tau = {tau!r}  [line {entry.line}, via gamma_diss]")
    else:
        tau = sys_r.take("tau", defaults.tau)
    sys_r.require_nonnegative("tau", tau)

    theta = sys_r.take("theta", defaults.theta)
    phi = sys_r.take("phi", defaults.phi)
    xi = sys_r.take("xi", defaults.xi)
    sys_r.require_nonnegative("xi", xi)

    if sys_r.has("drive_scale"):
        entry = sys_r.entry("drive_scale")
        if entry.value.lower() in ("none", "auto"):
            drive_scale = None
        else:
            drive_scale = _as_float(entry, "system.drive_scale")
            if drive_scale < 0:
                raise ConfigError(
                    "drive_scale must be nonnegative",
                    key="system.drive_scale", line=entry.line,
                )
        trace.append(f"system.drive_scale = {drive_scale!r}  [line {entry.line}]")
    else:
        drive_scale = defaults.drive_scale
        trace.append(f"system.drive_scale = {drive_scale!r}  [default]")

    if sys_r.has("delta") and sys_r.has("omega_d"):
        entry = sys_r.entry("delta")
        raise ConfigError(
            "delta and omega_d both set; they fix the same frequency",
            key="system.delta", line=entry.line,
        )
    if sys_r.has("delta"):
        entry = sys_r.entry("delta")
        delta = _as_float(entry, "system.delta")
        omega_d = omega_b - delta
        trace.append(f"system.omega_d = {omega_d!r}  [line {entry.line}, via delta]")
    else:
        omega_d = sys_r.take("omega_d", defaults.omega_d)

    n_fock = sys_r.take("n_fock", defaults.n_fock, kind="int")
    if n_fock < 3:
        entry = sys_r.entries.get("n_fock")
        raise ConfigError(
            f"n_fock must be at least 3, got {n_fock}",
            key="system.n_fock", line=entry.line if entry else None,
        )

    try:
        system = SystemParams(
            omega_q=omega_q, omega_b=omega_b, lam=lam, gamma_in=gamma_in,
            kappa_in=kappa_in, tau=tau, mu=mu, nu=nu, theta=theta, phi=phi,
            xi=xi, omega_d=omega_d, n_fock=n_fock, drive_scale=drive_scale,
        )
    except ValueError as exc:
        raise ConfigError(str(exc), key="system") from exc

    cavity = None
    if "cavity" in sections:
        cav_r = _Resolver(sections, "cavity", trace)
        cav_defaults = CavityParams()
        omega_c = cav_r.take("omega_c", cav_defaults.omega_c)
        beta_in = cav_r.take("beta_in", cav_defaults.beta_in)
        zeta = cav_r.take("zeta", cav_defaults.zeta)
        n_fock_c = cav_r.take("n_fock_c", cav_defaults.n_fock_c, kind="int")
        cav_r.require_nonnegative("beta_in", beta_in)
        cav_r.require_nonnegative("zeta", zeta)
        try:
            cavity = CavityParams(omega_c=omega_c, beta_in=beta_in, zeta=zeta,
                                  n_fock_c=n_fock_c)
        except ValueError as exc:
            raise ConfigError(str(exc), key="cavity") from exc

    sweep = None
    if "sweep" in sections:
        sw_r = _Resolver(sections, "sweep", trace)
        axes = []
        for key in ("axis1", "axis2"):
            entry = sw_r.entry(key)
            if entry is not None:
                axes.append(_parse_axis(entry, f"sweep.{key}"))
                trace.append(f"sweep.{key} = {entry.value!r}  [line {entry.line}]")
        if not axes:
            raise ConfigError("a [sweep] section needs at least axis1", key="sweep.axis1")
        entry = sw_r.entry("directions")
        if entry is None:
            directions = ("forward", "backward")
            trace.append("sweep.directions = ('forward', 'backward')  [default]")
        else:
            directions = tuple(
                d.strip().lower() for d in entry.value.split(",") if d.strip()
            )
            for d in directions:
                if d not in DIRECTION_THETA:
                    raise ConfigError(
                        f"unknown direction {d!r}", key="sweep.directions",
                        line=entry.line,
                    )
            trace.append(f"sweep.directions = {directions!r}  [line {entry.line}]")
        try:
            sweep = SweepSpec(system, tuple(axes), directions, cavity)
        except ValueError as exc:
            raise ConfigError(str(exc), key="sweep") from exc

    solver_r = _Resolver(sections, "solver", trace)
    method = solver_r.take("method", "trace-replacement", kind="str")
    if method not in ("trace-replacement", "null-space"):
        entry = solver_r.entries.get("method")
        raise ConfigError(
            f"unknown solver method {method!r}",
            key="solver.method", line=entry.line if entry else None,
        )
    threads_entry = solver_r.entry("threads")
    if threads_entry is None:
        threads = None
        trace.append("solver.threads = None  [default: SIM_THREADS or serial]")
    else:
        threads = _as_int(threads_entry, "solver.threads")
        if threads < 1:
            raise ConfigError("threads must be >= 1", key="solver.threads",
                              line=threads_entry.line)
        trace.append(f"solver.threads = {threads}  [line {threads_entry.line}]")

    out_r = _Resolver(sections, "output", trace)
    output = out_r.take("path", None, kind="str")

    return RunConfig(system, cavity, sweep, SolverOptions(method, threads), output), trace


def serialize_config(config: RunConfig) -> str:
    """Render a RunConfig as a document that parses back to an equal value."""
    lines = ["[system]"]
    s = config.system
    lines += [
        f"omega_q = {s.omega_q!r}",
        f"omega_b = {s.omega_b!r}",
        f"lambda = {s.lam!r}",
        f"gamma_in = {s.gamma_in!r}",
        f"kappa_in = {s.kappa_in!r}",
        f"tau = {s.tau!r}",
        f"mu = {s.mu!r}",
        f"nu = {s.nu!r}",
        f"theta = {s.theta!r}",
        f"phi = {s.phi!r}",
        f"xi = {s.xi!r}",
        f"drive_scale = {'none' if s.drive_scale is None else repr(s.drive_scale)}",
        f"omega_d = {s.omega_d!r}",
        f"n_fock = {s.n_fock}",
    ]
    if config.cavity is not None:
        c = config.cavity
        lines += [
            "",
            "[cavity]",
            f"omega_c = {c.omega_c!r}",
            f"beta_in = {c.beta_in!r}",
            f"zeta = {c.zeta!r}",
            f"n_fock_c = {c.n_fock_c}",
        ]
    if config.sweep is not None:
        lines += ["", "[sweep]"]
        for i, axis in enumerate(config.sweep.axes, start=1):
            lines.append(
                f"axis{i} = {axis.name}, {axis.start!r}, {axis.stop!r}, {axis.count}"
            )
        lines.append("directions = " + ", ".join(config.sweep.directions))
    lines += ["", "[solver]", f"method = {config.solver.method}"]
    if config.solver.threads is not None:
        lines.append(f"threads = {config.solver.threads}")
    if config.output is not None:
        lines += ["", "[output]", f"path = {config.output}"]
    return "\n".join(lines) + "\n"
