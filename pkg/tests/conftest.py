import pytest

from congforge import fixtures, subspaces


@pytest.fixture(scope="session")
def m3():
    return fixtures.m3()


@pytest.fixture(scope="session")
def n5():
    return fixtures.n5()


@pytest.fixture(scope="session")
def m3x2():
    return fixtures.m3_times_chain2()


@pytest.fixture(scope="session")
def sub22():
    return subspaces.subspace_lattice(2, 2)


@pytest.fixture(scope="session")
def sub32():
    return subspaces.subspace_lattice(3, 2)


@pytest.fixture(scope="session")
def sub23():
    return subspaces.subspace_lattice(2, 3)


@pytest.fixture(scope="session")
def lattice_corpus():
    return fixtures.standard_lattices()


@pytest.fixture(scope="session")
def algebra_corpus():
    return fixtures.standard_algebras()
