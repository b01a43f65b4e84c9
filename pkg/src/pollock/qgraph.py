"""The conjugation graph on proper norm-r quaternions modulo right units.

Vertices are canonical representatives (least right associate).  The edge with
label l leaves R for R' where l*R = R'*m factors with m one of the six norm-5
generators.  Everything heavy is vectorized over numpy int64 arrays of doubled
coordinates; exact Python quaternions are used for seeds and cross-checks.
"""
from __future__ import annotations

import hashlib
import math
import os
import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .arith import factorize
from .quat import (
    GENERATORS,
    HurwitzQuaternion,
    canonical_associate,
    conj_label,
    enumerate_units,
    is_orthogonal_to,
    orthogonal_lattice,
    quaternions_of_norm,
    signed_permutations,
)

MAGIC = b"PQG1"
NUM_LABELS = 6

GOOD_EXAMPLES = (
    HurwitzQuaternion.from_coords(216, 365, 421, 625),
    HurwitzQuaternion.from_coords(216, 409, 443, 581),
    HurwitzQuaternion.from_coords(736, 99, 155, 415),
    HurwitzQuaternion.from_coords(404, 99, 487, 581),
)


def expected_vertex_count(r: int) -> int:
    count = r
    for p, _ in factorize(r).factors:
        count = count // p * (p + 1)
    return count


def _check_modulus(r: int) -> None:
    if r < 3 or r % 2 == 0 or math.gcd(r, 5) != 1:
        raise ValueError(f"graph modulus must be odd, >= 3 and prime to 5, got {r}")


# -- vectorized quaternion helpers --------------------------------------------

def _qmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Doubled-coordinate product of broadcastable (..., 4) int64 arrays."""
    a0, a1, a2, a3 = (a[..., i] for i in range(4))
    b0, b1, b2, b3 = (b[..., i] for i in range(4))
    out = np.stack(
        [
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ],
        axis=-1,
    )
    return out // 2


_UNITS = np.array([u.twice for u in enumerate_units()], dtype=np.int64)
_GENS = np.array([g.twice for g in GENERATORS], dtype=np.int64)
_GENS_CONJ = _GENS * np.array([1, -1, -1, -1], dtype=np.int64)


class _KeyCodec:
    """Order-preserving packing of doubled coordinates into one int64."""

    def __init__(self, r: int):
        self.offset = 2 * math.isqrt(r) + 2
        self.radix = 2 * self.offset + 1
        if self.radix**4 >= 2**63:
            raise ValueError(f"r = {r} too large for 64-bit vertex keys")

    def encode(self, t: np.ndarray) -> np.ndarray:
        s = t + self.offset
        R = self.radix
        return ((s[..., 0] * R + s[..., 1]) * R + s[..., 2]) * R + s[..., 3]


def _canonical(t: np.ndarray, codec: _KeyCodec) -> tuple[np.ndarray, np.ndarray]:
    """Least right associate of each row; returns (coords, keys)."""
    assoc = _qmul(t[:, None, :], _UNITS[None, :, :])  # (n, 24, 4)
    keys = codec.encode(assoc)
    best = np.argmin(keys, axis=1)
    rows = np.arange(len(t))
    return assoc[rows, best], keys[rows, best]


def _step(t: np.ndarray, label: int) -> np.ndarray:
    """Neighbor (non-canonical) of each row under generator `label`."""
    left = _qmul(_GENS[label][None, :], t)
    out = np.zeros_like(t)
    found = np.zeros(len(t), dtype=np.int64)
    for mu in range(NUM_LABELS):
        y = _qmul(left, _GENS_CONJ[mu][None, :])
        ok = np.all(y % 5 == 0, axis=1)
        out[ok] = y[ok] // 5
        found += ok
    if not np.all(found == 1):
        bad = int(np.count_nonzero(found != 1))
        raise AssertionError(f"{bad} vertices without a unique norm-5 right factor")
    return out


# -- the graph ----------------------------------------------------------------

@dataclass
class QuatGraph:
    r: int
    coords: np.ndarray  # (V, 4) int64 doubled coordinates, canonical representatives
    neighbors: np.ndarray  # (V, 6) int32, column = label
    good_mask: np.ndarray = field(default=None)  # (V,) bool

    def __post_init__(self):
        if self.good_mask is None:
            self.good_mask = np.zeros(len(self.coords), dtype=bool)

    @property
    def num_vertices(self) -> int:
        return len(self.coords)

    @property
    def labels(self) -> np.ndarray:
        return np.tile(np.arange(NUM_LABELS, dtype=np.uint8), (self.num_vertices, 1))

    def vertex(self, index: int) -> HurwitzQuaternion:
        return HurwitzQuaternion(tuple(int(v) for v in self.coords[index]))

    def index_of(self, x: HurwitzQuaternion) -> int:
        """Index of the vertex representing the class of x; KeyError if absent."""
        codec = _KeyCodec(self.r)
        key = codec.encode(np.array(canonical_associate(x).twice, dtype=np.int64))
        keys = codec.encode(self.coords)
        pos = int(np.searchsorted(keys, key))
        if pos >= len(keys) or keys[pos] != key:
            raise KeyError(str(x))
        return pos

    @property
    def good_indices(self) -> np.ndarray:
        return np.flatnonzero(self.good_mask)


@dataclass(frozen=True)
class GraphReport:
    vertices: int
    expected_vertices: int
    regular: bool
    symmetric: bool
    connected: bool
    loops: int
    multi_edges: int

    @property
    def ok(self) -> bool:
        return self.vertices == self.expected_vertices and self.regular and self.symmetric and self.connected


def find_seed(r: int) -> HurwitzQuaternion:
    """Some proper quaternion of norm r with integer coordinates, or with halves."""
    for t0 in range(math.isqrt(4 * r), -1, -1):
        rest0 = 4 * r - t0 * t0
        for t1 in range(math.isqrt(rest0), -1, -1):
            if (t1 - t0) % 2:
                continue
            rest1 = rest0 - t1 * t1
            for t2 in range(math.isqrt(rest1), -1, -1):
                if (t2 - t0) % 2:
                    continue
                rest2 = rest1 - t2 * t2
                t3 = math.isqrt(rest2)
                if t3 * t3 == rest2 and (t3 - t0) % 2 == 0:
                    x = HurwitzQuaternion((t0, t1, t2, t3))
                    if x.is_proper():
                        return x
    raise ValueError(f"no proper quaternion of norm {r}")


def build_graph(r: int, chunk: int = 200_000) -> QuatGraph:
    """Breadth-first search from a seed; vertices sorted by canonical order."""
    _check_modulus(r)
    codec = _KeyCodec(r)
    seed = canonical_associate(find_seed(r))
    seed_arr = np.array([seed.twice], dtype=np.int64)
    visited_keys = codec.encode(seed_arr)
    levels = [seed_arr]
    frontier = seed_arr
    while len(frontier):
        new_coords, new_keys = [], []
        for start in range(0, len(frontier), chunk):
            block = frontier[start : start + chunk]
            for label in range(NUM_LABELS):
                c, k = _canonical(_step(block, label), codec)
                new_coords.append(c)
                new_keys.append(k)
        keys = np.concatenate(new_keys)
        coords = np.concatenate(new_coords)
        keys, first = np.unique(keys, return_index=True)
        coords = coords[first]
        fresh = ~np.isin(keys, visited_keys, assume_unique=True)
        frontier = coords[fresh]
        if len(frontier):
            visited_keys = np.union1d(visited_keys, keys[fresh])
            levels.append(frontier)
    coords = np.concatenate(levels)
    keys = codec.encode(coords)
    order = np.argsort(keys, kind="stable")
    coords, keys = coords[order], keys[order]
    neighbors = np.empty((len(coords), NUM_LABELS), dtype=np.int32)
    for start in range(0, len(coords), chunk):
        block = coords[start : start + chunk]
        for label in range(NUM_LABELS):
            _, k = _canonical(_step(block, label), codec)
            idx = np.searchsorted(keys, k)
            if np.any(keys[np.minimum(idx, len(keys) - 1)] != k):
                raise AssertionError("neighbor outside the explored component")
            neighbors[start : start + chunk, label] = idx
    return QuatGraph(r, coords, neighbors)


def build_graph_reference(r: int) -> QuatGraph:
    """Slow exact construction from all norm-r quaternions; for small r only."""
    _check_modulus(r)
    classes = sorted({canonical_associate(x) for x in quaternions_of_norm(r) if x.is_proper()})
    index = {x: i for i, x in enumerate(classes)}
    neighbors = np.empty((len(classes), NUM_LABELS), dtype=np.int32)
    for i, x in enumerate(classes):
        for label, g in enumerate(GENERATORS):
            left = g * x
            hits = [mu for mu in GENERATORS if (left * mu.conj()).divides_by_integer(5)]
            if len(hits) != 1:
                raise AssertionError(f"{len(hits)} right factors for {left}")
            neighbors[i, label] = index[canonical_associate((left * hits[0].conj()).exact_div_int(5))]
    coords = np.array([x.twice for x in classes], dtype=np.int64).reshape(-1, 4)
    return QuatGraph(r, coords, neighbors)


def graph_report(g: QuatGraph) -> GraphReport:
    V = g.num_vertices
    nb = g.neighbors.astype(np.int64)
    regular = nb.shape == (V, NUM_LABELS) and bool(np.all((nb >= 0) & (nb < V)))
    symmetric = True
    for label in range(NUM_LABELS):
        back = nb[nb[:, label], conj_label(label)]
        symmetric &= bool(np.all(back == np.arange(V)))
    loops = int(np.count_nonzero(nb == np.arange(V)[:, None]))
    sorted_nb = np.sort(nb, axis=1)
    multi = int(np.count_nonzero(sorted_nb[:, 1:] == sorted_nb[:, :-1]))
    # connectivity by a label-agnostic BFS over the adjacency arrays
    seen = np.zeros(V, dtype=bool)
    seen[0] = True
    frontier = np.array([0])
    while len(frontier):
        nxt = np.unique(nb[frontier].ravel())
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        frontier = nxt
    return GraphReport(V, expected_vertex_count(g.r), regular, symmetric, bool(seen.all()), loops, multi)


# -- good vertices ------------------------------------------------------------

def _quaternion_array(norm: int) -> np.ndarray:
    return np.array([x.twice for x in quaternions_of_norm(norm)], dtype=np.int64).reshape(-1, 4)


def _orthogonal_pairs(coords: np.ndarray, vecs: np.ndarray, chunk: int) -> dict[int, list[int]]:
    """vertex index -> indices of vecs orthogonal to it (exact in float64 at these sizes)."""
    out: dict[int, list[int]] = {}
    vf = vecs.T.astype(np.float64)
    for start in range(0, len(coords), chunk):
        dots = coords[start : start + chunk].astype(np.float64) @ vf
        vi, ai = np.nonzero(dots == 0)
        for v, a in zip(vi.tolist(), ai.tolist()):
            out.setdefault(start + v, []).append(a)
    return out


def good_frame(r: HurwitzQuaternion, norms=(83, 91, 99)):
    """Mutually orthogonal (A, B, C) of the given norms forming a basis of the
    lattice orthogonal to r, or None.  Exact, for a single quaternion."""
    lattice = orthogonal_lattice(r)
    cands = [[v for v in quaternions_of_norm(n) if is_orthogonal_to(v, r)] for n in norms]
    return _pick_frame(cands, lattice.gram_determinant, norms)


def _pick_frame(cands, lattice_det, norms):
    if math.prod(norms) != lattice_det:
        return None
    for a in cands[0]:
        for b in cands[1]:
            if not is_orthogonal_to(a, b):
                continue
            for c in cands[2]:
                if is_orthogonal_to(a, c) and is_orthogonal_to(b, c):
                    return a, b, c
    return None


def detect_good_vertices(g: QuatGraph, target_norms=(83, 91, 99), chunk: int = 20_000) -> np.ndarray:
    """Mark and return the good vertices of g (sorted indices)."""
    if math.prod(target_norms) != g.r:
        raise ValueError(f"norms {target_norms} do not multiply to {g.r}")
    arrays = [_quaternion_array(n) for n in target_norms]
    pairs = [_orthogonal_pairs(g.coords, arr, chunk) for arr in arrays]
    candidates = set(pairs[0]).intersection(pairs[1], pairs[2])
    good = []
    for v in sorted(candidates):
        cands = [
            [HurwitzQuaternion(tuple(int(c) for c in arrays[i][j])) for j in pairs[i][v]] for i in range(3)
        ]
        det = orthogonal_lattice(g.vertex(v)).gram_determinant
        if _pick_frame(cands, det, target_norms) is not None:
            good.append(v)
    g.good_mask = np.zeros(g.num_vertices, dtype=bool)
    g.good_mask[good] = True
    return np.array(good, dtype=np.int64)


def orbit_classes(examples=GOOD_EXAMPLES) -> set[HurwitzQuaternion]:
    """Canonical classes of all signed coordinate permutations of the examples."""
    return {canonical_associate(y) for x in examples for y in signed_permutations(x)}


# -- non-backtracking walks ----------------------------------------------------

@dataclass(frozen=True)
class WalkTable:
    """state_counts[v, f] bounds the walks from v whose first label is not f.

    The states are the 6V pairs in columns 0..5; column 6 is the extra
    unrestricted count from v (6 first moves).  True counts are at most
    state_counts * 5**scale_exponent.  start_excluded_counts has the same
    layout but does not zero rows of good starting vertices.
    """

    length: int
    state_counts: np.ndarray
    scale_exponent: int
    start_excluded_counts: np.ndarray

    @property
    def max_scaled(self) -> int:
        return int(self.state_counts[:, :NUM_LABELS].max())

    @property
    def max_scaled_start_excluded(self) -> int:
        return int(self.start_excluded_counts[:, :NUM_LABELS].max())

    @property
    def max_scaled_free_start(self) -> int:
        return int(self.state_counts[:, NUM_LABELS].max())

    def certifies_below(self, exponent: int, start_excluded: bool = False, free_start: bool = False) -> bool:
        """Whether every state bound (or every free-start total) is < 5**exponent."""
        table = self.start_excluded_counts if start_excluded else self.state_counts
        cols = table[:, NUM_LABELS] if free_start else table[:, :NUM_LABELS]
        return int(cols.max()) * 5**self.scale_exponent < 5**exponent


CHECKPOINT_VERSION = 1


def _save_checkpoint(path: Path, meta: dict, step: int, exponent: int, counts: np.ndarray) -> None:
    tmp = path.with_name(path.name + ".tmp.npz")
    np.savez(tmp, version=CHECKPOINT_VERSION, step=step, exponent=exponent, counts=counts, **meta)
    os.replace(tmp, path)


def _load_checkpoint(path: Path, meta: dict, shape, length: int):
    """(step, exponent, counts) from a compatible checkpoint, else None."""
    data = np.load(path)
    if "version" not in data.files or int(data["version"]) != CHECKPOINT_VERSION:
        return None
    if any(k not in data.files or int(data[k]) != v for k, v in meta.items()):
        return None
    if data["counts"].shape != shape or int(data["step"]) >= length:
        return None
    return int(data["step"]), int(data["exponent"]), data["counts"]


def count_nb_avoiding_walks(
    g: QuatGraph,
    length: int,
    scale_after: int | None = None,
    checkpoint: str | os.PathLike | None = None,
    checkpoint_every: int = 500,
    progress=None,
) -> WalkTable:
    """Dynamic program over (vertex, forbidden first label) states.

    Walks are counted only when no vertex on them, start included, is good.
    After each step beyond scale_after every count is divided by 5, rounding
    up, so the table stays an upper bound in int64.
    """
    if length < 1:
        raise ValueError("length must be >= 1")
    conj_cols = np.array([conj_label(l) for l in range(NUM_LABELS)], dtype=np.intp)
    # flat position of state (nbr(v, l), conj l) for every (v, l)
    source = (g.neighbors.astype(np.intp) * NUM_LABELS + conj_cols[None, :]).ravel()
    alive = (~g.good_mask).astype(np.int64)
    counts = np.repeat(alive[:, None], NUM_LABELS, axis=1)  # N_0(v, f)
    exponent, step = 0, 0
    ckpt = Path(checkpoint) if checkpoint else None
    meta = {"r": g.r, "scale_after": -1 if scale_after is None else scale_after, "good": int(g.good_mask.sum())}
    if ckpt and ckpt.exists():
        state = _load_checkpoint(ckpt, meta, counts.shape, length)
        if state is not None:
            step, exponent, counts = state
    limit = np.iinfo(np.int64).max // 6
    total = None
    gathered = np.empty(counts.size, dtype=np.int64)
    dead = g.good_mask
    while step < length:
        # gathered[v, l] = N(nbr(v, l), conj l)
        np.take(counts.ravel(), source, out=gathered)
        g6 = gathered.reshape(-1, NUM_LABELS)
        total = g6.sum(axis=1)
        counts = total[:, None] - g6
        step += 1
        if step == length:
            unzeroed = counts.copy()
        counts[dead] = 0
        if scale_after is not None and step > scale_after:
            # ceil(x / 5) for x >= 0
            counts += 4
            counts //= 5
            total = (total + 4) // 5
            exponent += 1
            if step == length:
                unzeroed = (unzeroed + 4) // 5
            if step % 64 == 0 and counts.max() > limit:
                raise OverflowError(f"counts exceed int64 at step {step}")
        elif counts.max() > limit:
            raise OverflowError(f"counts exceed int64 at step {step}; lower scale_after")
        if ckpt and step % checkpoint_every == 0:
            _save_checkpoint(ckpt, meta, step, exponent, counts)
        if progress:
            progress(step, exponent, counts)
    full = np.concatenate([counts, (total * alive)[:, None]], axis=1)
    excluded = np.concatenate([unzeroed, total[:, None]], axis=1)
    return WalkTable(length, full, exponent, excluded)


def brute_force_nb_walks(g: QuatGraph, start: int, length: int, forbidden_first: int | None = None) -> int:
    """Exact count by enumeration; the walk and its start must avoid good vertices."""
    if length > 12 and g.num_vertices > 10_000:
        raise ValueError("brute force refused: too many walks")
    nb = g.neighbors.tolist()
    good = g.good_mask.tolist()
    if good[start]:
        return 0

    def rec(v, banned, left):
        if left == 0:
            return 1
        total = 0
        for lab in range(NUM_LABELS):
            if lab == banned:
                continue
            w = nb[v][lab]
            if not good[w]:
                total += rec(w, conj_label(lab), left - 1)
        return total

    return rec(start, -1 if forbidden_first is None else forbidden_first, length)


# -- persistence ----------------------------------------------------------------

def _checksum(data: bytes) -> bytes:
    return hashlib.blake2b(data, digest_size=8).digest()


def graph_to_bytes(g: QuatGraph) -> bytes:
    V = g.num_vertices
    parts = [
        MAGIC,
        struct.pack("<QI", g.r, V),
        np.ascontiguousarray(g.coords, dtype="<i8").tobytes(),
        np.ascontiguousarray(g.neighbors, dtype="<i4").tobytes(),
        g.labels.astype(np.uint8).tobytes(),
        np.packbits(g.good_mask.astype(np.uint8), bitorder="little").tobytes(),
    ]
    body = b"".join(parts)
    return body + _checksum(body)


def graph_from_bytes(data: bytes) -> QuatGraph:
    if data[:4] != MAGIC:
        raise ValueError("not a PQG1 graph file")
    body, digest = data[:-8], data[-8:]
    if _checksum(body) != digest:
        raise ValueError("graph file checksum mismatch")
    r, V = struct.unpack_from("<QI", body, 4)
    off = 16
    coords = np.frombuffer(body, dtype="<i8", count=4 * V, offset=off).reshape(V, 4).astype(np.int64)
    off += 32 * V
    neighbors = np.frombuffer(body, dtype="<i4", count=6 * V, offset=off).reshape(V, 6).astype(np.int32)
    off += 24 * V
    labels = np.frombuffer(body, dtype=np.uint8, count=6 * V, offset=off).reshape(V, 6)
    off += 6 * V
    if not np.array_equal(labels, np.tile(np.arange(6, dtype=np.uint8), (V, 1))):
        raise ValueError("unexpected label layout")
    nbytes = (V + 7) // 8
    bits = np.frombuffer(body, dtype=np.uint8, count=nbytes, offset=off)
    good = np.unpackbits(bits, bitorder="little")[:V].astype(bool)
    if off + nbytes != len(body):
        raise ValueError("trailing bytes in graph file")
    return QuatGraph(int(r), coords, neighbors, good)


def save_graph(g: QuatGraph, path) -> None:
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(graph_to_bytes(g))
    os.replace(tmp, path)


def load_graph(path) -> QuatGraph:
    return graph_from_bytes(Path(path).read_bytes())


def cache_dir() -> Path:
    d = Path(os.environ.get("POLLOCK_CACHE_DIR", Path.home() / ".cache" / "pollock"))
    d.mkdir(parents=True, exist_ok=True)
    return d


def cached_graph(r: int, with_good: bool = True) -> QuatGraph:
    """Load r's graph from the cache directory, building (and marking good vertices) on a miss."""
    path = cache_dir() / f"graph_{r}.pqg"
    if path.exists():
        return load_graph(path)
    g = build_graph(r)
    if with_good and r == 747747:
        detect_good_vertices(g)
    save_graph(g, path)
    return g
