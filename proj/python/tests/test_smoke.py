# Copyright 2026 The jacres Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import itertools
from fractions import Fraction

import pytest

import jacres


def naive_jaccard(a, b):
    a, b = set(a), set(b)
    u = a | b
    return Fraction(len(a ^ b), len(u)) if u else Fraction(0)


def test_jaccard_matches_fractions():
    n = 5
    subsets = [list(c) for r in range(n + 1) for c in itertools.combinations(range(n), r)]
    for a in subsets:
        for b in subsets:
            num, den = jacres.jaccard(n, a, b)
            assert Fraction(num, den) == naive_jaccard(a, b)


def test_counterexample_has_witness():
    r = jacres.verify(4, [[0, 1], [0, 2], [0, 3]])
    assert not r["resolving"]
    a, b = r["witness"]
    sig = lambda s: [naive_jaccard(s, l) for l in ([0, 1], [0, 2], [0, 3])]
    assert a != b and sig(a) == sig(b)


def test_theorem1_construction_resolves():
    c = jacres.construct("theorem1", 10, seed=3)
    assert c["k"] == jacres.theorem1_k(10)
    assert len(c["landmarks"]) == c["k"] + 3
    assert jacres.verify(10, c["landmarks"])["resolving"]


def test_theorem2_is_complement_paired():
    c = jacres.construct("theorem2", 12, seed=1, epsilon="1/2")
    lm = c["landmarks"]
    for r, rc in zip(lm[::2], lm[1::2]):
        assert sorted(set(range(12)) - set(r)) == rc


def test_small_dimensions():
    assert jacres.metric_dimension(3)["beta"] == 2
    r = jacres.ich(5)
    assert jacres.verify(5, r["landmarks"])["resolving"]


def test_bounds_and_experiment():
    b = jacres.bounds(20, 30)
    assert b["log_sigma1"] < 0
    assert b["log_sigma2_exact"] <= b["log_sigma2_hoeffding"]
    e = jacres.experiment("theorem1", 8, trials=3, seed=2)
    assert e["trials"] == 3


def test_errors_map_to_exceptions():
    with pytest.raises(jacres.DomainError):
        jacres.theorem1_k(2)
    with pytest.raises(jacres.ResourceError):
        jacres.ich(30)
    with pytest.raises(jacres.Error):
        jacres.construct("nope", 5)
