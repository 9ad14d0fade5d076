import pytest

from spinalkit.catalog import get_group
from spinalkit.config import Settings
from spinalkit.schemas import Caps
from spinalkit.services.spinal import SpinalGroup


def spinal_group(label: str) -> SpinalGroup:
    return SpinalGroup(get_group(label).defining_tuple())


@pytest.fixture
def gs3() -> SpinalGroup:
    return spinal_group("gupta-sidki-3")


@pytest.fixture
def exceptional3() -> SpinalGroup:
    return spinal_group("exceptional-3")


@pytest.fixture
def multi_edge3() -> SpinalGroup:
    return spinal_group("multi-edge-3")


@pytest.fixture
def theta3() -> SpinalGroup:
    return spinal_group("multi-edge-3-theta")


@pytest.fixture
def gs5() -> SpinalGroup:
    return spinal_group("gupta-sidki-5")


@pytest.fixture
def small_caps() -> Caps:
    return Caps.from_settings(
        Settings(),
        theta_samples=15,
        theta_max_length=6,
        section_samples=40,
        section_max_length=8,
        oracle_samples=20,
        oracle_max_depth=3,
        word_samples=60,
        normalize_samples=5,
        quotient_depth=3,
        torsion_depth=4,
    )
