import pytest

from tracebracket import (alexander_biquandle, fixture_text, parse_biquandle,
                          parse_bracket, trivial_biquandle)


@pytest.fixture(scope="session")
def bq1():
    return parse_biquandle(fixture_text("bq1.txt"))


@pytest.fixture(scope="session")
def bq2():
    return parse_biquandle(fixture_text("bq2.txt"))


@pytest.fixture(scope="session")
def bq3():
    return parse_biquandle(fixture_text("bq3.txt"))


@pytest.fixture(scope="session")
def a312():
    return alexander_biquandle(3, 1, 2)


@pytest.fixture(scope="session")
def br_z7(bq2):
    return parse_bracket(fixture_text("br_z7.txt"), bq2)


@pytest.fixture(scope="session")
def br_z5(bq3):
    return [parse_bracket(fixture_text(f"br_z5_{i}.txt"), bq3) for i in (1, 2, 3, 4)]


@pytest.fixture(scope="session")
def br_gen(bq1):
    return parse_bracket(fixture_text("br_laurent.txt"), bq1)
