import time

import pytest

from welchdesigns import (
    build_field,
    build_quadric_code,
    build_welch_code,
    certify_support_design_streaming,
    dual,
    enumerate_low_weight_dual_supports,
    support_design,
    weight_distribution,
)


@pytest.fixture(scope="session")
def field5():
    return build_field(5)


@pytest.fixture(scope="session")
def field7():
    return build_field(7)


@pytest.fixture(scope="session")
def welch5(field5):
    return build_welch_code(field5)


@pytest.fixture(scope="session")
def welch7(field7):
    return build_welch_code(field7)


@pytest.fixture(scope="session")
def quadric5(field5):
    return build_quadric_code(field5)


@pytest.fixture(scope="session")
def wd5(welch5):
    return weight_distribution(welch5)


@pytest.fixture(scope="session")
def wd7_timed(welch7):
    t0 = time.time()
    wd = weight_distribution(welch7)
    return wd, time.time() - t0


@pytest.fixture(scope="session")
def low_weight5(welch5):
    return enumerate_low_weight_dual_supports(welch5, 4)


@pytest.fixture(scope="session")
def low_weight7(welch7):
    return enumerate_low_weight_dual_supports(welch7, 4)


@pytest.fixture(scope="session")
def design5(welch5):
    return support_design(dual(welch5), 4)


@pytest.fixture(scope="session")
def design7(welch7):
    return support_design(dual(welch7), 4)


@pytest.fixture(scope="session")
def quadric_design5(quadric5):
    return support_design(dual(quadric5), 4)


@pytest.fixture(scope="session")
def min_weight_stream5(welch5):
    return certify_support_design_streaming(welch5, 72)


@pytest.fixture(scope="session")
def min_weight_stream7(welch7):
    return certify_support_design_streaming(welch7, 702)
