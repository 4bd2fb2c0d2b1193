"""Shared fixtures: the shipped example programs and sessions over their signatures."""
from os import path

import pytest

from DSRCheck.classes.syntax import Program
from DSRCheck.io.parser import parse_program
from DSRCheck.typecheck import CheckSession
from DSRCheck.utility import read_text

ROOT = path.dirname(path.dirname(path.abspath(__file__)))
PROGRAMS = path.join(ROOT, "data", "programs")


def _load(name: str) -> Program:
    parsed = parse_program(read_text(path.join(PROGRAMS, name)))
    assert isinstance(parsed, Program), f"{name} does not parse: {parsed}"
    return parsed


@pytest.fixture
def load_program():
    return _load


@pytest.fixture
def program_path():
    return lambda name: path.join(PROGRAMS, name)


@pytest.fixture
def session_of():
    def make(name: str, **options) -> CheckSession:
        prog = _load(name)
        return CheckSession(prog.ursig, prog.sig, **options)

    return make


@pytest.fixture
def bits(session_of):
    """even, odd <= bits_s with One flipping parity"""
    return session_of("parity.dsr")


@pytest.fixture
def lists(session_of):
    """empty <= list, Nil : unit -> empty, Cons : list -> list"""
    return session_of("variance.dsr")


@pytest.fixture
def sig2(session_of):
    return session_of("sig2.dsr")


@pytest.fixture
def sigopt(session_of):
    return session_of("sigopt.dsr")


@pytest.fixture
def tainted(session_of):
    return session_of("tainted.dsr")


@pytest.fixture
def cnf(session_of):
    return session_of("cnf.dsr")
