from pathlib import Path

import pytest

from mtlcap.geometry import MM, Family, Layer, StructureSpec, mplp1_spec

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
	return FIXTURES


@pytest.fixture
def small_mplp1() -> StructureSpec:
	"""Two strips in the three-layer stack; cheap enough for exact-equality tests."""
	return mplp1_spec(m=2, t=0.02 * MM, d=0.1 * MM)


@pytest.fixture
def single_strip() -> StructureSpec:
	return StructureSpec(
		family=Family.generic,
		m=1,
		t=0.02 * MM,
		widths=(0.1 * MM,),
		d=0.2 * MM,
		layers=(Layer(height=0.1 * MM, eps=4.0),),
		conductor_layer=1,
	)


@pytest.fixture
def coarse() -> dict[str, int]:
	"""Segment counts for quick meshes."""
	return {"across": 2, "along": 6}
