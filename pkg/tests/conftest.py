import pytest

from cmtrace.numfield import FieldSpec, Quad, primes_above, reduce_element

Q5 = FieldSpec("quadratic", 5)


def _prime_of(gen: Quad, field=Q5):
    """The degree-1 prime ideal above |norm(gen)| that contains gen."""
    p = abs(gen.norm().numerator)
    return next(ps for ps in primes_above(p, field) if not reduce_element(gen, ps))


@pytest.fixture
def prime_of():
    return _prime_of


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
