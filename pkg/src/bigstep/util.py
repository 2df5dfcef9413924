"""Small immutable containers shared across the package."""
from __future__ import annotations

from typing import Any, Iterable, Iterator, Tuple


class FrozenMap:
    """Immutable, hashable mapping with value-based equality.

    Keys must be hashable and mutually comparable (entries are kept sorted
    so two maps with equal contents are structurally identical).
    """

    __slots__ = ("_items", "_dict", "_hash")

    def __init__(self, items: Iterable[Tuple[Any, Any]] = ()):
        d = dict(items)
        pairs = tuple(sorted(d.items(), key=lambda kv: repr(kv[0])))
        object.__setattr__(self, "_items", pairs)
        object.__setattr__(self, "_dict", d)
        object.__setattr__(self, "_hash", hash(pairs))

    def set(self, key: Any, value: Any) -> "FrozenMap":
        d = dict(self._dict)
        d[key] = value
        return FrozenMap(d.items())

    def get(self, key: Any, default: Any = None) -> Any:
        return self._dict.get(key, default)

    def items(self) -> Tuple[Tuple[Any, Any], ...]:
        return self._items

    def keys(self):
        return self._dict.keys()

    def values(self):
        return self._dict.values()

    def __getitem__(self, key: Any) -> Any:
        return self._dict[key]

    def __contains__(self, key: Any) -> bool:
        return key in self._dict

    def __iter__(self) -> Iterator[Any]:
        return iter(self._dict)

    def __len__(self) -> int:
        return len(self._dict)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FrozenMap) and self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        inner = ", ".join(f"{k!r}: {v!r}" for k, v in self._items)
        return f"FrozenMap({{{inner}}})"


EMPTY_MAP = FrozenMap()


def dedup(items: Iterable[Any]) -> tuple:
    """Structural, order-preserving deduplication."""
    return tuple(dict.fromkeys(items))
