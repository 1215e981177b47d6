"""Built-in homeomorphisms with exact forward and inverse evaluation.

The two counterexample maps (the inversion of the punctured plane and the
three-piece shear of the upper half-plane) plus identity, real-affine maps,
and compositions.  Image regions are declared analytically so the image-side
boundary distance stays exact for the estimators.
"""
from __future__ import annotations

from typing import Sequence

from .errors import CompositionError, ConfigurationError, MembershipError
from .spaces import (
    HalfPlaneRegion,
    PuncturedPlaneRegion,
    Region,
    as_point,
)


class MapSpec:
    """A homeomorphism f: source_region -> image_region with an exact inverse."""

    kind: str = "abstract"
    source_region: Region
    image_region: Region

    def _forward(self, z: complex) -> complex:
        raise NotImplementedError

    def _backward(self, w: complex) -> complex:
        raise NotImplementedError

    def eval(self, z) -> complex:
        z = as_point(z)
        if not self.source_region.contains(z):
            raise MembershipError(f"{z} is outside the source region of {self.kind}")
        return self._forward(z)

    def invert(self, w) -> complex:
        w = as_point(w)
        if not self.image_region.contains(w):
            raise MembershipError(f"{w} is outside the image region of {self.kind}")
        return self._backward(w)

    def params(self) -> dict:
        return {}

    def describe(self) -> dict:
        return {"kind": self.kind, "params": self.params(),
                "source": self.source_region.describe(),
                "image": self.image_region.describe()}

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.source_region.name} -> {self.image_region.name})"


class IdentityMap(MapSpec):
    kind = "identity"

    def __init__(self, region: Region):
        self.source_region = region
        self.image_region = region

    def _forward(self, z: complex) -> complex:
        return z

    def _backward(self, w: complex) -> complex:
        return w


class AffineMap(MapSpec):
    """Real-affine map z -> A z + b with invertible 2x2 matrix A."""

    kind = "affine"

    def __init__(self, matrix: Sequence[Sequence[float]], offset,
                 source_region: Region, image_region: Region):
        (a, b), (c, d) = matrix
        det = a * d - b * c
        if det == 0.0:
            raise ConfigurationError("affine matrix must be invertible")
        self.a, self.b, self.c, self.d = float(a), float(b), float(c), float(d)
        self._det = det
        self.offset = as_point(offset)
        self.source_region = source_region
        self.image_region = image_region

    def _forward(self, z: complex) -> complex:
        return complex(self.a * z.real + self.b * z.imag,
                       self.c * z.real + self.d * z.imag) + self.offset

    def _backward(self, w: complex) -> complex:
        v = w - self.offset
        return complex((self.d * v.real - self.b * v.imag) / self._det,
                       (-self.c * v.real + self.a * v.imag) / self._det)

    def params(self) -> dict:
        return {"matrix": [[self.a, self.b], [self.c, self.d]],
                "offset": [self.offset.real, self.offset.imag]}


class InversionMap(MapSpec):
    """f(z) = z / |z|^2 on the punctured plane; an involution."""

    kind = "inversion"

    def __init__(self, region: PuncturedPlaneRegion | None = None):
        region = region if region is not None else PuncturedPlaneRegion()
        self.source_region = region
        self.image_region = region

    def _forward(self, z: complex) -> complex:
        r2 = z.real * z.real + z.imag * z.imag
        return complex(z.real / r2, z.imag / r2)

    def _backward(self, w: complex) -> complex:
        return self._forward(w)


class HalfPlaneShearMap(MapSpec):
    """Three-piece shear of the upper half-plane.

    Identity for x <= 0; x + i (x+1) y for x >= 0 with 0 < y <= 1; and
    x + i (x + y) for x >= 0 with y > 1.  Continuous across both seams and a
    self-homeomorphism of the half-plane.
    """

    kind = "halfplane-shear"

    def __init__(self, region: HalfPlaneRegion | None = None):
        region = region if region is not None else HalfPlaneRegion()
        self.source_region = region
        self.image_region = region

    def _forward(self, z: complex) -> complex:
        x, y = z.real, z.imag
        if x <= 0.0:
            return z
        if y <= 1.0:
            return complex(x, (x + 1.0) * y)
        return complex(x, x + y)

    def _backward(self, w: complex) -> complex:
        u, v = w.real, w.imag
        if u <= 0.0:
            return w
        if v <= u + 1.0:
            return complex(u, v / (u + 1.0))
        return complex(u, v - u)


class CompositionMap(MapSpec):
    """Ordered composition: maps[0] applied first."""

    kind = "composition"

    def __init__(self, maps: Sequence[MapSpec]):
        if not maps:
            raise CompositionError("composition needs at least one map")
        for f, g in zip(maps, maps[1:]):
            if f.image_region != g.source_region:
                raise CompositionError(
                    f"image of {f.kind} does not match source of {g.kind}")
        self.maps = tuple(maps)
        self.source_region = maps[0].source_region
        self.image_region = maps[-1].image_region

    def _forward(self, z: complex) -> complex:
        for f in self.maps:
            z = f._forward(z)
        return z

    def _backward(self, w: complex) -> complex:
        for f in reversed(self.maps):
            w = f._backward(w)
        return w

    def params(self) -> dict:
        return {"maps": [f.describe() for f in self.maps]}


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def eval_map(f: MapSpec, x) -> complex:
    """f(x) in closed form; MembershipError outside the source region."""
    return f.eval(x)


def invert_map(f: MapSpec, y) -> complex:
    """f^{-1}(y); eval_map(f, invert_map(f, y)) == y to 1e-12."""
    return f.invert(y)


def compose(g: MapSpec, f: MapSpec) -> CompositionMap:
    """g after f; the image region of f must equal the source region of g."""
    parts: list[MapSpec] = []
    for m in (f, g):
        parts.extend(m.maps if isinstance(m, CompositionMap) else (m,))
    return CompositionMap(parts)


def pushforward_points(f: MapSpec, pts: Sequence) -> list[complex]:
    """Element-wise eval_map, order preserved; aborts with the failing index."""
    out: list[complex] = []
    for i, p in enumerate(pts):
        try:
            out.append(f.eval(p))
        except MembershipError as exc:
            raise MembershipError(f"point at index {i} rejected: {exc}") from exc
    return out
