"""Subsystem layouts, bipartitions and tripartite groupings.

Subsystem 0 is the leftmost (most significant) tensor factor, so a ket such
as |10010> reads qubit 1..5 as indices 0..4.
"""

from dataclasses import dataclass
from math import prod
from typing import FrozenSet, Iterable, Iterator, List, Sequence, Tuple, Union

from ..exceptions import DimensionMismatchError, InvalidPartitionError


@dataclass(frozen=True)
class Dims:
    """Ordered subsystem dimensions of a multipartite Hilbert space."""

    dims: Tuple[int, ...]

    def __post_init__(self) -> None:
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "dims", dims)
        if not dims:
            raise DimensionMismatchError("Dims must list at least one subsystem")
        for d in dims:
            if d < 2:
                raise DimensionMismatchError(f"Subsystem dimension must be >= 2, got {d}")

    @classmethod
    def of(cls, dims: Union["Dims", Sequence[int]]) -> "Dims":
        """Coerce a sequence of integers into Dims."""
        if isinstance(dims, Dims):
            return dims
        return cls(tuple(dims))

    @property
    def total(self) -> int:
        """Dimension of the full Hilbert space."""
        return prod(self.dims)

    def __len__(self) -> int:
        return len(self.dims)

    def __iter__(self) -> Iterator[int]:
        return iter(self.dims)

    def __getitem__(self, index: int) -> int:
        return self.dims[index]

    def check_index(self, index: int) -> None:
        """Raise InvalidPartitionError unless index names a subsystem."""
        if not 0 <= index < len(self.dims):
            raise InvalidPartitionError(
                f"Subsystem index {index} out of range for {len(self.dims)} subsystems"
            )

    def dim_of(self, indices: Iterable[int]) -> int:
        """Joint dimension of the given subsystems."""
        return prod(self.dims[i] for i in indices)

    def subset(self, indices: Iterable[int]) -> "Dims":
        """Dims of the listed subsystems, in the order given."""
        return Dims(tuple(self.dims[i] for i in indices))

    def __str__(self) -> str:
        return "x".join(str(d) for d in self.dims)


@dataclass(frozen=True)
class Bipartition:
    """A cut of `size` subsystems; `left` names one side (e.g. AC of AC:B)."""

    left: FrozenSet[int]
    size: int

    def __post_init__(self) -> None:
        left = frozenset(int(i) for i in self.left)
        object.__setattr__(self, "left", left)
        if not left:
            raise InvalidPartitionError("Bipartition side must be nonempty")
        if any(i < 0 or i >= self.size for i in left):
            raise InvalidPartitionError(
                f"Bipartition {sorted(left)} has indices outside 0..{self.size - 1}"
            )
        if len(left) == self.size:
            raise InvalidPartitionError("Bipartition side must be a proper subset")

    @classmethod
    def of(cls, left: Iterable[int], size: int) -> "Bipartition":
        return cls(frozenset(left), size)

    @classmethod
    def parse(cls, label: str, size: int) -> "Bipartition":
        """Parse a 1-based label such as '12:345' (single-digit subsystem labels)."""
        try:
            left_label, right_label = label.split(":")
            left = {int(ch) - 1 for ch in left_label}
            right = {int(ch) - 1 for ch in right_label}
        except ValueError as e:
            raise InvalidPartitionError(f"Malformed bipartition label: {label!r}") from e
        if left & right or (left | right) != set(range(size)):
            raise InvalidPartitionError(f"Label {label!r} does not cut {size} subsystems")
        return cls(frozenset(left), size)

    def complement(self) -> "Bipartition":
        """The opposite side of the same cut."""
        return Bipartition(frozenset(range(self.size)) - self.left, self.size)

    @property
    def right(self) -> FrozenSet[int]:
        return frozenset(range(self.size)) - self.left

    def label(self) -> str:
        """1-based label in the '12:345' notation."""
        left = "".join(str(i + 1) for i in sorted(self.left))
        right = "".join(str(i + 1) for i in sorted(self.right))
        return f"{left}:{right}"


@dataclass(frozen=True)
class Grouping:
    """Disjoint, exhaustive assignment of subsystems to A, B and C.

    Alice holds A and C at the start, Bob holds B, and C is the carrier.
    """

    a: FrozenSet[int]
    b: FrozenSet[int]
    c: FrozenSet[int]

    def __post_init__(self) -> None:
        for name in ("a", "b", "c"):
            part = frozenset(int(i) for i in getattr(self, name))
            object.__setattr__(self, name, part)
            if not part:
                raise InvalidPartitionError(f"Group {name.upper()} must be nonempty")
        if self.a & self.b or self.a & self.c or self.b & self.c:
            raise InvalidPartitionError("Groups A, B and C must be disjoint")
        if self.a | self.b | self.c != frozenset(range(self.size)):
            raise InvalidPartitionError(
                "Groups A, B and C must cover subsystems 0..n-1 exactly"
            )

    @classmethod
    def of(cls, a: Iterable[int], b: Iterable[int], c: Iterable[int]) -> "Grouping":
        return cls(frozenset(a), frozenset(b), frozenset(c))

    @classmethod
    def parse(cls, text: str) -> "Grouping":
        """Parse 'a,b,...:c,...:d,...' with 1-based subsystem labels."""
        parts = text.split(":")
        if len(parts) != 3:
            raise InvalidPartitionError(f"Grouping needs three ':'-separated groups: {text!r}")
        groups: List[FrozenSet[int]] = []
        for part in parts:
            try:
                labels = [int(tok) for tok in part.split(",") if tok.strip()]
            except ValueError as e:
                raise InvalidPartitionError(f"Malformed grouping: {text!r}") from e
            if any(label < 1 for label in labels):
                raise InvalidPartitionError(f"Subsystem labels are 1-based: {text!r}")
            groups.append(frozenset(label - 1 for label in labels))
        return cls(*groups)

    @property
    def size(self) -> int:
        return len(self.a) + len(self.b) + len(self.c)

    def cut_ac_b(self) -> Bipartition:
        """Cut between the labs before transmission (AC:B)."""
        return Bipartition(self.a | self.c, self.size)

    def cut_ab_c(self) -> Bipartition:
        """Cut isolating the carrier (AB:C)."""
        return Bipartition(self.a | self.b, self.size)

    def cut_a_bc(self) -> Bipartition:
        """Cut between the labs after transmission (A:BC)."""
        return Bipartition(self.a, self.size)

    def swapped(self) -> "Grouping":
        """Exchange the roles of B and C."""
        return Grouping(self.a, self.c, self.b)

    def label(self) -> str:
        return ":".join(
            ",".join(str(i + 1) for i in sorted(part)) for part in (self.a, self.b, self.c)
        )

    def __str__(self) -> str:
        return f"A={{{','.join(str(i + 1) for i in sorted(self.a))}}} " \
               f"B={{{','.join(str(i + 1) for i in sorted(self.b))}}} " \
               f"C={{{','.join(str(i + 1) for i in sorted(self.c))}}}"
