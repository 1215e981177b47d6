"""Built-in scenarios: the worked example domains, maps, and mesh windows."""
from __future__ import annotations

from typing import Optional

from .errors import ConfigurationError
from .maps import (
    AffineMap,
    HalfPlaneShearMap,
    IdentityMap,
    InversionMap,
    MapSpec,
)
from .spaces import (
    CurveComplexSpace,
    CurveRegion,
    DiskRegion,
    HalfPlaneRegion,
    PuncturedPlaneRegion,
    Region,
    Segment,
)

# The rectangular frame complex: four segments around [-2, 2] x [0, 1].
_L1 = Segment(complex(-2.0, 0.0), complex(2.0, 0.0))
_L2 = Segment(complex(-2.0, 1.0), complex(2.0, 1.0))
_L3 = Segment(complex(-2.0, 0.0), complex(-2.0, 1.0))
_L4 = Segment(complex(2.0, 0.0), complex(2.0, 1.0))
# The removed top middle: [-1, 1] x {1}, leaving two stubs of l2.
_L2_LEFT = Segment(complex(-2.0, 1.0), complex(-1.0, 1.0))
_L2_RIGHT = Segment(complex(1.0, 1.0), complex(2.0, 1.0))


def frame_space() -> CurveComplexSpace:
    """The 4-segment frame; 5-quasiconvex with witness pair (0,0)-(0,1)."""
    return CurveComplexSpace((_L1, _L2, _L3, _L4), quasiconvexity=5.0)


def frame_region_omega(space: Optional[CurveComplexSpace] = None) -> CurveRegion:
    """The frame minus the closed top-middle segment; boundary {(-1,1), (1,1)}."""
    return CurveRegion(space or frame_space(),
                       (_L1, _L3, _L4, _L2_LEFT, _L2_RIGHT),
                       (complex(-1.0, 1.0), complex(1.0, 1.0)),
                       name="frame-omega")


def frame_region_bottom(space: Optional[CurveComplexSpace] = None) -> CurveRegion:
    """The open bottom segment of the frame; boundary {(-2,0), (2,0)}."""
    return CurveRegion(space or frame_space(), (_L1,),
                       (complex(-2.0, 0.0), complex(2.0, 0.0)),
                       name="frame-bottom")


_REGIONS = {
    "halfplane": lambda: HalfPlaneRegion(),
    "punctured": lambda: PuncturedPlaneRegion(),
    "disk": lambda: DiskRegion(0j, 1.0),
    "frame-omega": frame_region_omega,
    "frame-bottom": frame_region_bottom,
}

BUILTIN_DOMAINS = tuple(sorted(_REGIONS))


def make_region(name: str) -> Region:
    try:
        return _REGIONS[name]()
    except KeyError:
        raise ConfigurationError(
            f"unknown domain {name!r}; choose from {', '.join(BUILTIN_DOMAINS)}") from None


def default_mesh_params(name: str) -> dict:
    """Grading, bbox, and refinement-depth defaults per built-in domain."""
    if name == "halfplane":
        return {"grading_factor": 0.1, "bbox": (-2.0, 2.0, 0.2, 4.2), "max_depth": 12}
    if name == "punctured":
        return {"grading_factor": 0.1, "bbox": (-5.5, 5.5, -5.5, 5.5), "max_depth": 12}
    if name == "disk":
        # The whole curved boundary band refines; cap the depth so default
        # meshes stay desk-scale.
        return {"grading_factor": 0.1, "bbox": None, "max_depth": 8}
    if name in ("frame-omega", "frame-bottom"):
        return {"grading_factor": 0.05, "bbox": None, "max_depth": 12}
    raise ConfigurationError(f"unknown domain {name!r}")


def semisolid_sampling(region: Region) -> dict:
    """MeshBackend sampling constraints that keep the built-in maps' images
    inside the default meshed bbox."""
    if isinstance(region, HalfPlaneRegion):
        return {"sample_window": (-1.0, 1.0, 0.25, 1.8)}
    if isinstance(region, PuncturedPlaneRegion):
        return {"delta_range": (0.25, 4.5)}
    return {}


def make_map(kind: str, domain: Optional[str] = None, *,
             matrix=None, offset=0j) -> MapSpec:
    """Build a named map; identity and affine need an explicit domain."""
    kind = kind.lower()
    if kind == "inversion":
        return InversionMap()
    if kind in ("shear", "halfplane-shear"):
        return HalfPlaneShearMap()
    if kind == "identity":
        region = make_region(domain or "halfplane")
        return IdentityMap(region)
    if kind == "affine":
        if matrix is None:
            raise ConfigurationError("affine map needs a 2x2 matrix")
        region = make_region(domain or "halfplane")
        return AffineMap(matrix, offset, region, region)
    raise ConfigurationError(f"unknown map kind {kind!r}")
