import pytest

from services.coxeter.coxeter_service import CoxeterService
from services.coxeter.root_system_service import RootSystemService
from services.coxeter.weyl_group_service import GroupElement, WeylGroup
from services.oracle.flag_service import FlagService
from services.verification.harness_service import HarnessService


def element(group: WeylGroup, text: str) -> GroupElement:
    return group.parse_element(text)


@pytest.fixture(scope="session")
def coxeter_service():
    return CoxeterService(RootSystemService())


@pytest.fixture(scope="session")
def a1(coxeter_service):
    return coxeter_service.group("A1")


@pytest.fixture(scope="session")
def a2(coxeter_service):
    return coxeter_service.group("A2")


@pytest.fixture(scope="session")
def a3(coxeter_service):
    return coxeter_service.group("A3")


@pytest.fixture(scope="session")
def b2(coxeter_service):
    return coxeter_service.group("B2")


@pytest.fixture(scope="session")
def b3(coxeter_service):
    return coxeter_service.group("B3")


@pytest.fixture(scope="session")
def g2(coxeter_service):
    return coxeter_service.group("G2")


@pytest.fixture(scope="session")
def flag_service():
    return FlagService()


@pytest.fixture(scope="session")
def harness(coxeter_service, flag_service):
    return HarnessService(coxeter_service, flag_service)
