"""Monotone maps between finite ordinals [n] = {0 < 1 < ... < n}."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class OrdinalMap:
    """A non-strictly increasing map [source_dim] -> [target_dim].

    values[i] is the image of i; len(values) == source_dim + 1.
    """

    source_dim: int
    target_dim: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.source_dim < 0 or self.target_dim < 0:
            raise ValueError("ordinal dimensions must be nonnegative")
        if len(self.values) != self.source_dim + 1:
            raise ValueError("value list length must be source_dim + 1")
        prev = 0
        for v in self.values:
            if not 0 <= v <= self.target_dim:
                raise ValueError(f"value {v} outside [0, {self.target_dim}]")
            if v < prev:
                raise ValueError("values must be non-strictly increasing")
            prev = v

    def __call__(self, i: int) -> int:
        return self.values[i]

    def then(self, other: OrdinalMap) -> OrdinalMap:
        """Composite: apply self first, then other."""
        if self.target_dim != other.source_dim:
            raise ValueError("composition dimension mismatch")
        return OrdinalMap(
            self.source_dim, other.target_dim, tuple(other.values[v] for v in self.values)
        )

    @property
    def is_mono(self) -> bool:
        return all(a < b for a, b in zip(self.values, self.values[1:]))

    @property
    def is_epi(self) -> bool:
        return set(self.values) == set(range(self.target_dim + 1))

    @property
    def is_identity(self) -> bool:
        return self.source_dim == self.target_dim and self.values == tuple(
            range(self.source_dim + 1)
        )

    def epi_mono_factor(self) -> tuple[OrdinalMap, OrdinalMap]:
        """Factor self = epi then mono (unique image factorization)."""
        image = sorted(set(self.values))
        index = {v: i for i, v in enumerate(image)}
        epi = OrdinalMap(self.source_dim, len(image) - 1, tuple(index[v] for v in self.values))
        mono = OrdinalMap(len(image) - 1, self.target_dim, tuple(image))
        return epi, mono

    def op(self) -> OrdinalMap:
        """The same map on the opposite (order-reversed) ordinals."""
        n, m = self.source_dim, self.target_dim
        return OrdinalMap(n, m, tuple(m - self.values[n - i] for i in range(n + 1)))


def identity(n: int) -> OrdinalMap:
    return OrdinalMap(n, n, tuple(range(n + 1)))


def coface(i: int, n: int) -> OrdinalMap:
    """delta_i: [n-1] -> [n], the mono skipping i."""
    if not 0 <= i <= n:
        raise ValueError("coface index out of range")
    return OrdinalMap(n - 1, n, tuple(v if v < i else v + 1 for v in range(n)))


def codegeneracy(i: int, n: int) -> OrdinalMap:
    """sigma_i: [n+1] -> [n], the epi hitting i twice."""
    if not 0 <= i <= n:
        raise ValueError("codegeneracy index out of range")
    return OrdinalMap(n + 1, n, tuple(v if v <= i else v - 1 for v in range(n + 2)))


def vertex(i: int, n: int) -> OrdinalMap:
    """[0] -> [n] picking out vertex i."""
    if not 0 <= i <= n:
        raise ValueError("vertex index out of range")
    return OrdinalMap(0, n, (i,))


def mono_from_subset(subset: tuple[int, ...], n: int) -> OrdinalMap:
    """The mono [len(subset)-1] -> [n] with the given image."""
    return OrdinalMap(len(subset) - 1, n, tuple(subset))


def epi_to_word(epi: OrdinalMap) -> tuple[int, ...]:
    """Decreasing degeneracy-index word for an epi.

    The simplex epi*(x) equals s_{w[0]} s_{w[1]} ... s_{w[-1]} (x) with
    w strictly decreasing; the empty word encodes the identity.
    """
    if not epi.is_epi:
        raise ValueError("not an epi")
    dups = [i for i in range(epi.source_dim) if epi.values[i] == epi.values[i + 1]]
    return tuple(sorted(dups, reverse=True))


def word_to_epi(word: tuple[int, ...], source_dim: int) -> OrdinalMap:
    """Inverse of epi_to_word; word must be strictly decreasing."""
    if list(word) != sorted(set(word), reverse=True):
        raise ValueError("degeneracy word must be strictly decreasing")
    result = identity(source_dim - len(word))
    # Rebuild by precomposing codegeneracies, innermost (smallest index) first.
    for ascending_index in reversed(word):
        result = codegeneracy(ascending_index, result.source_dim).then(result)
    return result


def all_epis(source_dim: int, target_dim: int) -> list[OrdinalMap]:
    """All epis [source_dim] ->> [target_dim], lexicographically ordered."""
    if target_dim > source_dim:
        return []
    results: list[OrdinalMap] = []

    def extend(prefix: list[int]) -> None:
        if len(prefix) == source_dim + 1:
            if prefix[-1] == target_dim:
                results.append(OrdinalMap(source_dim, target_dim, tuple(prefix)))
            return
        last = prefix[-1]
        remaining = source_dim + 1 - len(prefix)
        for nxt in (last, last + 1):
            if nxt > target_dim:
                continue
            # Must still be able to reach target_dim with the slots left.
            if target_dim - nxt <= remaining - 1:
                extend(prefix + [nxt])

    if source_dim >= 0:
        extend([0])
    return results


def all_monos(source_dim: int, target_dim: int) -> list[OrdinalMap]:
    """All monos [source_dim] -> [target_dim] (subsets in lex order)."""
    from itertools import combinations

    if source_dim > target_dim:
        return []
    return [
        OrdinalMap(source_dim, target_dim, combo)
        for combo in combinations(range(target_dim + 1), source_dim + 1)
    ]


def all_maps(source_dim: int, target_dim: int) -> list[OrdinalMap]:
    """All monotone maps [source_dim] -> [target_dim]."""
    from itertools import combinations_with_replacement

    return [
        OrdinalMap(source_dim, target_dim, combo)
        for combo in combinations_with_replacement(range(target_dim + 1), source_dim + 1)
    ]
