"""
Shared fixtures: bundled specs, a seeded generator, small problem builders and a CLI runner.
"""

from typing import Callable, Optional, Sequence

import numpy as np
import pytest

from sweep_vel import (AffineSubspace, Ball, MovingSet, ProblemSpec, SpecFile, SymmetricOperator, TimeFunction,
                       bundled_spec_path, read_spec_file)
from sweep_vel.__main__ import main


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def bundled() -> Callable[[str], SpecFile]:
    """ Loader for the specs shipped under resources/examples. """
    def _load(name: str) -> SpecFile:
        return read_spec_file(bundled_spec_path(name))
    return _load


@pytest.fixture
def line_problem() -> Callable[..., ProblemSpec]:
    """
    A0, A1 given, f(t) = (0, t), C(t) = R x {0}, u0 = 0, T = 1: the unbounded-family instance when
    A0 = A1 = diag(0, 1).
    """
    def _build(a0: Sequence[float] = (0.0, 1.0), a1: Sequence[float] = (0.0, 1.0), horizon: float = 1.0,
               u0: Optional[Sequence[float]] = None) -> ProblemSpec:
        return ProblemSpec(A0=SymmetricOperator.diagonal(a0), A1=SymmetricOperator.diagonal(a1),
                           f=TimeFunction.polynomial([[0.0, 0.0], [0.0, 1.0]]),
                           C=MovingSet.static(AffineSubspace([0.0, 0.0], [[1.0, 0.0]])),
                           u0=np.zeros(2) if u0 is None else u0, T=horizon)
    return _build


@pytest.fixture
def ball_problem() -> Callable[..., ProblemSpec]:
    """ Static unit ball in the plane with caller-chosen operators and forcing. """
    def _build(a0: Sequence[Sequence[float]], a1: Sequence[Sequence[float]], f: Optional[TimeFunction] = None,
               u0: Sequence[float] = (0.0, 0.0), horizon: float = 1.0) -> ProblemSpec:
        return ProblemSpec(A0=SymmetricOperator(np.array(a0, dtype=float)),
                           A1=SymmetricOperator(np.array(a1, dtype=float)),
                           f=f if f is not None else TimeFunction.zero(2),
                           C=MovingSet.static(Ball([0.0, 0.0], 1.0)), u0=u0, T=horizon)
    return _build


@pytest.fixture
def cli(capsys) -> Callable[..., tuple[int, str, str]]:
    """ Runs 'sweepvel <argv>' in-process; returns (exit code, stdout, stderr). """
    def _run(*argv: str) -> tuple[int, str, str]:
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err
    return _run
