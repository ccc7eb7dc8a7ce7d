"""Backend parity and kernel invariants.

The compiled and pure kernels must be interchangeable; every parity
test runs the same inputs through both modules when both import.
"""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_mask_family
from zerotrace._kernels import available_backends, backend_name
from zerotrace._kernels import _pure
from zerotrace.constructions import binom_le

BACKENDS = available_backends()
needs_both = pytest.mark.skipif(
    len(BACKENDS) < 2, reason="compiled kernel not built"
)


def test_backend_selection_is_consistent():
    assert backend_name() in BACKENDS


@needs_both
def test_parity_on_seeded_families(rng):
    compiled = BACKENDS["compiled"]
    for _ in range(80):
        n = rng.randint(1, 6)
        masks = random_mask_family(rng, n, rng.randint(1, 12))
        sub = rng.randrange(1 << n)
        assert compiled.count_restrictions(masks, sub) == _pure.count_restrictions(
            masks, sub
        )
        assert compiled.vcdim(masks, n) == _pure.vcdim(masks, n)
        assert compiled.ldim(masks, n) == _pure.ldim(masks, n)
        for k in range(n + 1):
            assert compiled.pi(masks, n, k) == _pure.pi(masks, n, k)
        for depth in range(4):
            assert compiled.rho(masks, n, depth) == _pure.rho(masks, n, depth)


@needs_both
def test_parity_on_larger_ground(rng):
    compiled = BACKENDS["compiled"]
    n = 10
    masks = sorted(rng.sample(range(1 << n), 40))
    assert compiled.vcdim(masks, n) == _pure.vcdim(masks, n)
    assert compiled.pi(masks, n, 4) == _pure.pi(masks, n, 4)
    assert compiled.ldim(masks, n) == _pure.ldim(masks, n)


masks_strategy = st.integers(1, 5).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(
            st.integers(0, (1 << n) - 1), min_size=1, max_size=10, unique=True
        ),
    )
)


@given(masks_strategy)
def test_vcdim_bounded_by_log_family_size(case):
    n, masks = case
    d = _pure.vcdim(masks, n)
    assert (1 << d) <= len(masks)
    assert d <= n


@given(masks_strategy)
def test_pi_monotone_and_sauer(case):
    n, masks = case
    d = _pure.vcdim(masks, n)
    values = [_pure.pi(masks, n, k) for k in range(n + 1)]
    assert values[0] == 1
    assert all(a <= b for a, b in zip(values, values[1:]))
    for k, v in enumerate(values):
        assert v <= binom_le(k, d)


@given(masks_strategy)
def test_rho_monotone_and_dominates_pi(case):
    n, masks = case
    ld = _pure.ldim(masks, n)
    rhos = [_pure.rho(masks, n, depth) for depth in range(n + 1)]
    assert all(a <= b for a, b in zip(rhos, rhos[1:]))
    assert all(r <= len(masks) for r in rhos)
    for k in range(n + 1):
        assert _pure.pi(masks, n, k) <= rhos[k]
        assert rhos[k] <= binom_le(k, ld)


@given(masks_strategy)
def test_vcdim_at_most_ldim(case):
    n, masks = case
    assert _pure.vcdim(masks, n) <= _pure.ldim(masks, n)


def test_count_restrictions_hand_case():
    # sets {0}, {1}, {0,1} restricted to {0}: traces {}, {0}
    assert _pure.count_restrictions([0b01, 0b10, 0b11], 0b01) == 2
    assert _pure.count_restrictions([0b01, 0b10, 0b11], 0b11) == 3


def test_powerset_dimensions():
    n = 3
    masks = list(range(1 << n))
    assert _pure.vcdim(masks, n) == n
    assert _pure.ldim(masks, n) == n
    assert _pure.pi(masks, n, n) == 1 << n
    assert _pure.rho(masks, n, n) == 1 << n


def test_env_var_forces_backend():
    import os
    import subprocess
    import sys

    code = "import zerotrace._kernels as k; print(k.backend_name())"
    for name in BACKENDS:
        proc = subprocess.run(
            [sys.executable, "-c", code],
            env={**os.environ, "ZEROTRACE_BACKEND": name},
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0, proc.stderr
        assert proc.stdout.strip() == name
    proc = subprocess.run(
        [sys.executable, "-c", code],
        env={**os.environ, "ZEROTRACE_BACKEND": "turbo"},
        capture_output=True,
        text=True,
    )
    assert proc.returncode != 0
    assert "unknown ZEROTRACE_BACKEND" in proc.stderr
