# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Quadtree spatial relational database: Python bindings."""

from ._core import (
    MAX_LEVEL,
    Database,
    SqlError,
    cell_rect,
    contains,
    decode_cell,
    difference,
    encode,
    encode_cell,
    format_statement,
    intersect,
    neighbor,
    normalize,
    parent,
    union,
)

__all__ = [
    "MAX_LEVEL",
    "Database",
    "SqlError",
    "cell_rect",
    "contains",
    "decode_cell",
    "difference",
    "encode",
    "encode_cell",
    "format_statement",
    "intersect",
    "neighbor",
    "normalize",
    "parent",
    "union",
]
