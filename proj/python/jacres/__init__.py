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

"""Jaccard metric resolving sets: constructions, verification and bounds."""

from ._jacres import (
    ArgumentError,
    DimensionError,
    DomainError,
    Error,
    ResourceError,
    bounds,
    construct,
    corollary3_W,
    experiment,
    ich,
    jaccard,
    metric_dimension,
    pigeonhole_lower_bound,
    theorem1_k,
    theorem2_k,
    verify,
)

__all__ = [
    "ArgumentError",
    "DimensionError",
    "DomainError",
    "Error",
    "ResourceError",
    "bounds",
    "construct",
    "corollary3_W",
    "experiment",
    "ich",
    "jaccard",
    "metric_dimension",
    "pigeonhole_lower_bound",
    "theorem1_k",
    "theorem2_k",
    "verify",
]
