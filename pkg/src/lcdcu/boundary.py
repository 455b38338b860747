"""Ghost-cell boundary conditions and the gravity source term."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .grid import GHOST, Field, prim_to_cons


class ConfigError(ValueError):
    """Inconsistent problem configuration."""


@dataclass(frozen=True)
class Free:
    """Zeroth-order extrapolation: ghosts copy the nearest interior cell."""


@dataclass(frozen=True)
class SolidWall:
    """Reflection with the wall-normal momentum negated."""


@dataclass(frozen=True)
class Periodic:
    pass


@dataclass(frozen=True)
class Dirichlet:
    """Ghosts hold a fixed primitive state ``(rho, u, [v,] p)``."""

    prim: tuple
    gamma: float

    def conserved(self) -> np.ndarray:
        return prim_to_cons(np.asarray(self.prim, dtype=float), self.gamma)


Condition = Free | SolidWall | Periodic | Dirichlet


@dataclass(frozen=True)
class BoundarySpec:
    left: Condition = field(default_factory=Free)
    right: Condition = field(default_factory=Free)
    bottom: Condition | None = None
    top: Condition | None = None

    def __post_init__(self):
        for a, b in ((self.left, self.right), (self.bottom, self.top)):
            if isinstance(a, Periodic) != isinstance(b, Periodic):
                raise ConfigError("periodic boundaries must be paired on opposite sides")

    @classmethod
    def uniform(cls, cond: Condition, ndim: int = 1) -> "BoundarySpec":
        if ndim == 1:
            return cls(cond, cond)
        return cls(cond, cond, cond, cond)

    def check(self, ndim: int) -> None:
        if ndim == 2 and (self.bottom is None or self.top is None):
            raise ConfigError("2-D problems need bottom and top conditions")
        for cond in (self.left, self.right, self.bottom, self.top):
            if isinstance(cond, Dirichlet) and len(cond.prim) != ndim + 2:
                raise ConfigError(f"Dirichlet state {cond.prim} does not match a {ndim}-D problem")


def _fill_axis(q: np.ndarray, axis: int, low: Condition, high: Condition) -> None:
    """Fill the ghost layers of ``q`` (components on axis 0) along ``axis``."""
    g = GHOST
    n = q.shape[axis] - 2 * g
    normal = axis  # momentum component normal to the boundary
    idx = lambda s: (slice(None),) * axis + (s,)  # noqa: E731

    if isinstance(low, Periodic):
        # modular indices also cover lines shorter than the ghost width
        ghosts = np.r_[0:g, n + g : n + 2 * g]
        q[idx(ghosts)] = q[idx(g + (ghosts - g) % n)]
        return

    for side, cond in (("low", low), ("high", high)):
        for m in range(g):
            if side == "low":
                ghost, mirror, nearest = g - 1 - m, min(g + m, n + g - 1), g
            else:
                ghost, mirror, nearest = n + g + m, max(n + g - 1 - m, g), n + g - 1
            if isinstance(cond, Free):
                q[idx(ghost)] = q[idx(nearest)]
            elif isinstance(cond, SolidWall):
                q[idx(ghost)] = q[idx(mirror)]
                q[(normal,) + idx(ghost)[1:]] *= -1.0
            elif isinstance(cond, Dirichlet):
                u = cond.conserved()
                q[idx(ghost)] = u.reshape((-1,) + (1,) * (q.ndim - 2))
            else:
                raise ConfigError(f"unsupported boundary condition {cond!r}")


def fill_ghost(f: Field, spec: BoundarySpec) -> Field:
    """Populate the ghost layers in place; x-sides first, then y-sides."""
    spec.check(f.ndim)
    _fill_axis(f.q, 1, spec.left, spec.right)
    if f.ndim == 2:
        _fill_axis(f.q, 2, spec.bottom, spec.top)
    return f


@dataclass(frozen=True)
class SourceSpec:
    """``kind`` is ``None`` or ``"gravity"`` (unit acceleration in +y)."""

    kind: str | None = None

    def __post_init__(self):
        if self.kind not in (None, "gravity"):
            raise ConfigError(f"unknown source kind {self.kind!r}")

    def check(self, ndim: int) -> None:
        if self.kind == "gravity" and ndim != 2:
            raise ConfigError("the gravity source needs a 2-D problem")


NO_SOURCE = SourceSpec()


def gravity_source(u: np.ndarray) -> np.ndarray:
    """Source ``(0, 0, rho, rho v)`` for conserved 2-D states (components first)."""
    u = np.asarray(u, dtype=float)
    if u.shape[0] != 4:
        raise ValueError("gravity source needs 2-D conserved states")
    s = np.zeros_like(u)
    s[2] = u[0]
    s[3] = u[2]
    return s


def add_source(tendency: np.ndarray, interior: np.ndarray, spec: SourceSpec) -> None:
    if spec.kind == "gravity":
        tendency[2] += interior[0]
        tendency[3] += interior[2]
