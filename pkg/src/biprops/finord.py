"""Skeletal finite ordinals and arbitrary maps between them.

A finite ordinal is identified with its cardinality ``n``; its elements are
``0, ..., n-1`` in the natural order.  Maps are stored as image tuples and
compose in diagrammatic order: ``compose(f, g)(i) == g(f(i))``.

The lexicographic product ``I x J`` is ordered primarily by the second
coordinate, so ``(i, j)`` sits at position ``j * |I| + i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterator, Sequence


class FinOrdError(ValueError):
    pass


@dataclass(frozen=True)
class FinMap:
    dom: int
    cod: int
    image: tuple[int, ...]

    def __post_init__(self):
        if self.dom < 0 or self.cod < 0:
            raise FinOrdError(f"negative cardinality in {self!r}")
        if len(self.image) != self.dom:
            raise FinOrdError(f"image has length {len(self.image)}, expected {self.dom}")
        if self.image and (min(self.image) < 0 or max(self.image) >= self.cod):
            bad = next(v for v in self.image if not 0 <= v < self.cod)
            raise FinOrdError(f"image entry {bad} outside 0..{self.cod - 1}")

    def __call__(self, i: int) -> int:
        return self.image[i]

    def __repr__(self):
        return f"FinMap({self.dom}->{self.cod}: {list(self.image)})"

    @property
    def is_bijection(self) -> bool:
        return self.dom == self.cod and sorted(self.image) == list(range(self.cod))

    @property
    def is_monotone(self) -> bool:
        return all(a <= b for a, b in zip(self.image, self.image[1:]))

    @cached_property
    def fibers(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.cod)]
        for i, v in enumerate(self.image):
            out[v].append(i)
        return tuple(tuple(b) for b in out)

    def fiber(self, l: int) -> tuple[int, ...]:
        return self.fibers[l] if 0 <= l < self.cod else ()

    def inverse(self) -> FinMap:
        if not self.is_bijection:
            raise FinOrdError(f"{self!r} is not a bijection")
        inv = [0] * self.dom
        for i, v in enumerate(self.image):
            inv[v] = i
        return FinMap(self.cod, self.dom, tuple(inv))


def fmap(image: Sequence[int], cod: int | None = None) -> FinMap:
    """Shorthand: ``fmap([0, 1, 0])`` is the map 3 -> 2."""
    image = tuple(image)
    if cod is None:
        cod = max(image) + 1 if image else 0
    return FinMap(len(image), cod, image)


def identity(n: int) -> FinMap:
    return FinMap(n, n, tuple(range(n)))


def terminal(n: int) -> FinMap:
    """The unique map n -> 1 (written nabla)."""
    return FinMap(n, 1, (0,) * n)


def compose(f: FinMap, g: FinMap) -> FinMap:
    if f.cod != g.dom:
        raise FinOrdError(f"cannot compose {f!r} with {g!r}")
    return FinMap(f.dom, g.cod, tuple(g.image[v] for v in f.image))


def all_maps(dom: int, cod: int) -> Iterator[FinMap]:
    """All maps dom -> cod, ordered by image tuple with the last entry fastest."""
    for image in product(range(cod), repeat=dom):
        yield FinMap(dom, cod, image)


def all_bijections(n: int) -> Iterator[FinMap]:
    from itertools import permutations
    for image in permutations(range(n)):
        yield FinMap(n, n, image)


def lex_index(I: int, J: int, i: int, j: int) -> int:
    """Rank of ``(i, j)`` in ``I x J`` ordered by second coordinate first."""
    if not (0 <= i < I and 0 <= j < J):
        raise FinOrdError(f"({i}, {j}) outside {I} x {J}")
    return j * I + i


def lex_pair(I: int, J: int, pos: int) -> tuple[int, int]:
    if not 0 <= pos < I * J:
        raise FinOrdError(f"position {pos} outside {I} x {J}")
    return pos % I, pos // I


# -- fibers and graphs ------------------------------------------------------

@dataclass(frozen=True)
class FiberDecomposition:
    map: FinMap
    fibers: tuple[tuple[int, ...], ...]
    graph: FinMap  # sigma(f): I -> I, i |-> rank of (i, f(i)) among graph pairs


@lru_cache(maxsize=None)
def decompose(f: FinMap) -> FiberDecomposition:
    fibers = tuple(f.fiber(l) for l in range(f.cod))
    return FiberDecomposition(f, fibers, graph(f))


@lru_cache(maxsize=None)
def graph(f: FinMap) -> FinMap:
    """The bijection sigma(f): I -> (disjoint union of fibers of f).

    Pairs ``(i, f(i))`` are ranked in the lexicographic order of ``I x L``,
    i.e. by fiber first and by ``i`` inside a fiber.
    """
    pairs = sorted(range(f.dom), key=lambda i: lex_index(f.dom, f.cod, i, f.image[i]))
    rank = [0] * f.dom
    for pos, i in enumerate(pairs):
        rank[i] = pos
    return FinMap(f.dom, f.dom, tuple(rank))


# -- skeletal restriction ---------------------------------------------------

@dataclass(frozen=True)
class Restriction:
    """A restricted map relabelled to skeletal form.

    ``dom_table[a]`` is the original element at skeletal position ``a``;
    likewise for ``cod_table``.
    """
    map: FinMap
    dom_table: tuple[int, ...]
    cod_table: tuple[int, ...]


@lru_cache(maxsize=None)
def restrict(phi: FinMap, psi: FinMap, k: int) -> Restriction:
    """Restriction ``phi| : phi^-1 psi^-1 k -> psi^-1 k`` made skeletal."""
    if phi.cod != psi.dom:
        raise FinOrdError(f"{phi!r} and {psi!r} are not composable")
    if not 0 <= k < psi.cod:
        raise FinOrdError(f"{k} is not an element of {psi.cod}")
    cod_table = psi.fiber(k)
    where = {j: a for a, j in enumerate(cod_table)}
    dom_table = tuple(i for i, j in enumerate(phi.image) if j in where)
    image = tuple(where[phi.image[i]] for i in dom_table)
    return Restriction(FinMap(len(dom_table), len(cod_table), image), dom_table, cod_table)


def fiber_map(f: FinMap, l: int) -> FinMap:
    """The unique map ``f^-1 l -> 1``; a convenience over ``restrict``."""
    return terminal(len(f.fiber(l)))


# -- indexed disjoint unions ------------------------------------------------

@dataclass(frozen=True)
class IndexedUnion:
    """``S = disjoint union of S_i`` with blocks concatenated in order of i."""
    blocks: tuple[int, ...]

    @property
    def index(self) -> int:
        return len(self.blocks)

    @property
    def total(self) -> int:
        return sum(self.blocks)

    @property
    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for b in self.blocks:
            out.append(acc)
            acc += b
        return tuple(out)

    @property
    def projection(self) -> FinMap:
        return FinMap(self.total, self.index,
                      tuple(i for i, b in enumerate(self.blocks) for _ in range(b)))

    def position(self, i: int, s: int) -> int:
        if not 0 <= s < self.blocks[i]:
            raise FinOrdError(f"{s} outside block {i} of size {self.blocks[i]}")
        return self.offsets[i] + s

    def run(self, indices: Sequence[int]) -> tuple[int, ...]:
        """Positions of the concatenation of the listed blocks, in list order."""
        offs = self.offsets
        return tuple(offs[i] + s for i in indices for s in range(self.blocks[i]))


def _check_family_shape(family, f, g, S: IndexedUnion, Q: IndexedUnion):
    if f.cod != g.cod:
        raise FinOrdError(f"{f!r} and {g!r} do not form a cospan")
    if f.dom != S.index or g.dom != Q.index:
        raise FinOrdError("block families do not match the cospan legs")
    if family is not None and len(family) != f.cod:
        raise FinOrdError(f"family has {len(family)} maps, expected {f.cod}")


def merge_family(family: Sequence[FinMap], f: FinMap, g: FinMap,
                 S: IndexedUnion, Q: IndexedUnion) -> FinMap:
    """Assemble per-fiber maps ``phi_l`` into the map ``phi: S -> Q`` over ``f, g``."""
    _check_family_shape(family, f, g, S, Q)
    image = [0] * S.total
    for l, phi_l in enumerate(family):
        src = S.run(f.fiber(l))
        dst = Q.run(g.fiber(l))
        if phi_l.dom != len(src) or phi_l.cod != len(dst):
            raise FinOrdError(f"block size mismatch for fiber {l}: {phi_l!r}")
        for a, pos in enumerate(src):
            image[pos] = dst[phi_l.image[a]]
    return FinMap(S.total, Q.total, tuple(image))


def split(phi: FinMap, f: FinMap, g: FinMap,
          S: IndexedUnion, Q: IndexedUnion) -> tuple[FinMap, ...]:
    """Inverse of :func:`merge_family`; rejects maps that cross fibers."""
    _check_family_shape(None, f, g, S, Q)
    if phi.dom != S.total or phi.cod != Q.total:
        raise FinOrdError(f"{phi!r} does not map {S.total} -> {Q.total}")
    pr_S, pr_Q = S.projection, Q.projection
    for s in range(S.total):
        if g.image[pr_Q.image[phi.image[s]]] != f.image[pr_S.image[s]]:
            raise FinOrdError(f"{phi!r} is not fiberwise over the cospan at position {s}")
    family = []
    for l in range(f.cod):
        src = S.run(f.fiber(l))
        dst = Q.run(g.fiber(l))
        where = {q: b for b, q in enumerate(dst)}
        family.append(FinMap(len(src), len(dst), tuple(where[phi.image[s]] for s in src)))
    return tuple(family)


# -- permutations of blocks -------------------------------------------------

def block_sum(maps: Sequence[FinMap]) -> FinMap:
    """Disjoint union of maps, blocks placed side by side."""
    image, dom_off, cod_off = [], 0, 0
    for m in maps:
        image.extend(cod_off + v for v in m.image)
        dom_off += m.dom
        cod_off += m.cod
    return FinMap(dom_off, cod_off, tuple(image))


def block_permutation(sizes: Sequence[int], perm: FinMap) -> FinMap:
    """Move block ``k`` (of the given size) to block position ``perm(k)``."""
    if perm.dom != len(sizes) or not perm.is_bijection:
        raise FinOrdError(f"{perm!r} does not permute {len(sizes)} blocks")
    inv = perm.inverse()
    new_sizes = [sizes[inv.image[p]] for p in range(len(sizes))]
    new_offsets = IndexedUnion(tuple(new_sizes)).offsets
    image = []
    for k, size in enumerate(sizes):
        base = new_offsets[perm.image[k]]
        image.extend(base + s for s in range(size))
    return FinMap(sum(sizes), sum(sizes), tuple(image))


def _restrictions(f: FinMap, h: FinMap) -> list[FinMap]:
    """All ``restrict(f, h, l).map`` at once, in one pass over ``f``."""
    pos, count = [0] * h.dom, [0] * h.cod
    for k, l in enumerate(h.image):
        pos[k] = count[l]
        count[l] += 1
    images: list[list[int]] = [[] for _ in range(h.cod)]
    for k in f.image:
        images[h.image[k]].append(pos[k])
    return [FinMap(len(im), count[l], tuple(im)) for l, im in enumerate(images)]


def _side_images(f: FinMap, h: FinMap, graph_fn) -> tuple[tuple, tuple]:
    if f.cod != h.dom:
        raise FinOrdError(f"cannot compose {f!r} with {h!r}")
    fh = FinMap(f.dom, h.cod, tuple(h.image[k] for k in f.image))
    # left: sigma(fh), then the fibrewise graphs side by side
    summed: list[int] = []
    for m in _restrictions(f, h):
        off = len(summed)
        summed.extend(off + v for v in graph_fn(m).image)
    left = tuple(summed[v] for v in graph_fn(fh).image)
    # right: sigma(f), then the blocks f^-1 k moved to position sigma(h)(k)
    perm = graph_fn(h).image
    if sorted(perm) != list(range(h.dom)):
        raise FinOrdError(f"{perm} does not permute {h.dom} blocks")
    sizes = [len(b) for b in f.fibers]
    inv = [0] * len(perm)
    for k, p in enumerate(perm):
        inv[p] = k
    offsets, acc = [0] * len(perm), 0
    for p in range(len(perm)):
        offsets[p] = acc
        acc += sizes[inv[p]]
    moved: list[int] = []
    for k, size in enumerate(sizes):
        moved.extend(range(offsets[perm[k]], offsets[perm[k]] + size))
    right = tuple(moved[v] for v in graph_fn(f).image)
    return left, right


def graph_functoriality_sides(f: FinMap, h: FinMap, graph_fn=None) -> tuple[FinMap, FinMap]:
    """Both composites of the graph square for ``I -f-> K -h-> L``.

    Left: ``sigma(f.h)`` followed by the fiberwise graphs of the restrictions
    ``f| : (fh)^-1 l -> h^-1 l``.  Right: ``sigma(f)`` followed by moving the
    blocks ``f^-1 k`` into the order prescribed by ``sigma(h)``.
    """
    left, right = _side_images(f, h, graph_fn or graph)
    return FinMap(f.dom, f.dom, left), FinMap(f.dom, f.dom, right)


def check_graph_functoriality(f: FinMap, h: FinMap, graph_fn=None) -> bool:
    left, right = _side_images(f, h, graph_fn or graph)
    return left == right
