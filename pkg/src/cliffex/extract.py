"""Clifford extraction for ordered lists of Pauli rotations.

Each rotation exp(i*P*t) is synthesized as a single-qubit basis-change
layer, a CNOT parity tree and one RZ on the tree root.  Only that left
half is emitted into the executable circuit; the mirrored right half
accumulates in a conjugation tableau and re-emerges once, at the very
end, as the extracted Clifford circuit.  Downstream Pauli strings are
rewritten through the tableau lazily, when they become the current
string or a scored candidate.

Tree shapes are chosen so that rewritten successor strings lose as many
non-identity letters as possible: the tree qubits are grouped by the
successor's letters, multi-qubit groups are refined recursively against
later strings, and open group roots are joined control->target in the
order (Z->Y), (I->X), (Y->X) -- the letter pairs a CNOT conjugation can
erase.  Within a group whose deeper structure does not matter, qubits
are chained from the highest index down, leaving the lowest index as
the group root.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .circuit import Circuit, Gate, cx, h, inverse, rz, sdg
from .errors import EmptyTree, MixedQubitCounts
from .pauli import PauliString, PauliTerm
from .tableau import ConjugationTableau, identity_tableau

_ROOT_PRIORITY = {"X": 0, "Y": 1, "I": 2, "Z": 3, None: 4}
_PAIRINGS = (("Z", "Y"), ("I", "X"), ("Y", "X"))
_GROUP_ORDER = ("X", "Y", "Z", "I")


@dataclass
class CommuteBlock:
    """Maximal consecutive run of mutually commuting terms.  Terms may be
    reordered inside a block; block boundaries never move."""

    terms: list[PauliTerm] = field(default_factory=list)


@dataclass(frozen=True)
class ExtractionResult:
    opt_circuit: Circuit
    tableau: ConjugationTableau
    extracted: Circuit
    stats: dict


def convert_commute_sets(terms: list[PauliTerm]) -> list[CommuteBlock]:
    """Greedy left-to-right partition: a term joins the current block iff
    it commutes with every member, otherwise it starts a new block."""
    terms = list(terms)
    if not terms:
        raise ValueError("cannot partition an empty term list")
    n = terms[0].pauli.n
    blocks: list[CommuteBlock] = []
    cur: list[PauliTerm] = []
    for k, t in enumerate(terms):
        if t.pauli.n != n:
            raise MixedQubitCounts(f"term {k} acts on {t.pauli.n} qubits, expected {n}")
        p = t.pauli
        if all(
            (((p.x & m.pauli.z).bit_count() + (p.z & m.pauli.x).bit_count()) & 1) == 0
            for m in cur
        ):
            cur.append(t)
        else:
            blocks.append(CommuteBlock(cur))
            cur = [t]
    blocks.append(CommuteBlock(cur))
    return blocks


def _letter_at(x: int, z: int, q: int) -> str:
    return "IXZY"[((x >> q) & 1) + 2 * ((z >> q) & 1)]


def _support(mask: int) -> list[int]:
    out = []
    while mask:
        q = (mask & -mask).bit_length() - 1
        out.append(q)
        mask &= mask - 1
    return out


def _h_bits(bx: int, bz: int, q: int) -> tuple[int, int]:
    if ((bx >> q) & 1) != ((bz >> q) & 1):
        bit = 1 << q
        bx ^= bit
        bz ^= bit
    return bx, bz


def _cx_bits(bx: int, bz: int, c: int, t: int) -> tuple[int, int]:
    bx ^= ((bx >> c) & 1) << t
    bz ^= ((bz >> t) & 1) << c
    return bx, bz


def basis_change_gates(p: PauliString) -> list[Gate]:
    """Single-qubit layer rotating every X/Y letter of ``p`` to Z
    (X: [H]; Y: [SDG, H] in time order)."""
    out: list[Gate] = []
    for q in _support(p.x | p.z):
        letter = _letter_at(p.x, p.z, q)
        if letter == "X":
            out.append(h(q))
        elif letter == "Y":
            out.append(sdg(q))
            out.append(h(q))
    return out


def _connect_roots(roots: list[tuple[str | None, int]], out: list[tuple[int, int]]) -> int:
    """Join open subtree roots into one root; returns the final root.

    Priority pairings fire first (source root consumed, target keeps its
    parity-carrying role), then every leftover chains into the final
    root, which is the highest-priority class present (X > Y > I > Z).
    """
    if len(roots) == 1:
        return roots[0][1]
    by: dict[str | None, list[int]] = {"X": [], "Y": [], "Z": [], "I": [], None: []}
    for cls, q in roots:
        by[cls].append(q)
    for lst in by.values():
        lst.sort()
    for src, dst in _PAIRINGS:
        a, b = by[src], by[dst]
        k = min(len(a), len(b))
        for i in range(k):
            out.append((a[i], b[i]))
        by[src] = a[k:]
    left = [(cls, q) for cls in ("X", "Y", "I", "Z", None) for q in by[cls]]
    _, root = min(left, key=lambda cq: (_ROOT_PRIORITY[cq[0]], cq[1]))
    for _, q in sorted(left, key=lambda cq: cq[1]):
        if q != root:
            out.append((q, root))
    return root


def _split_groups(idxs: list[int], gx: int, gz: int) -> dict[str, list[int]]:
    groups: dict[str, list[int]] = {"X": [], "Y": [], "Z": [], "I": []}
    for q in idxs:
        groups[_letter_at(gx, gz, q)].append(q)
    return groups


def _synth_recursive(idxs, level, guidance, out) -> list[tuple[str | None, int]]:
    """Returns the open roots of a (sub)tree; emits CNOTs into ``out``."""
    while True:
        if len(idxs) == 1:
            return [(None, idxs[0])]
        g = guidance(level)
        if g is None:
            # guidance exhausted: leave every qubit open for the caller's
            # connection phase instead of fixing an arbitrary chain
            return [(None, q) for q in idxs]
        groups = _split_groups(idxs, *g)
        present = [c for c in _GROUP_ORDER if groups[c]]
        if len(present) > 1:
            break
        level += 1  # single group: the split can only come from deeper guidance
    roots: list[tuple[str | None, int]] = []
    for cls in _GROUP_ORDER:
        grp = groups[cls]
        if not grp:
            continue
        if len(grp) == 1:
            roots.append((cls, grp[0]))
        else:
            roots.extend((cls, q) for _, q in _synth_recursive(grp, level + 1, guidance, out))
    root = _connect_roots(roots, out)
    return [(None, root)]


def _chain_groups(idxs, g, out) -> list[tuple[str | None, int]]:
    """Non-recursive shape: chain each guidance group from the highest
    index down (root = lowest index)."""
    if g is None:
        grouped: list[tuple[str | None, list[int]]] = [(None, list(idxs))]
    else:
        groups = _split_groups(idxs, *g)
        grouped = [(c, groups[c]) for c in _GROUP_ORDER if groups[c]]
    roots: list[tuple[str | None, int]] = []
    for cls, grp in grouped:
        for k in range(len(grp) - 1, 0, -1):
            out.append((grp[k], grp[k - 1]))
        roots.append((cls, grp[0]))
    return roots


def tree_synthesis(
    paulis: list[PauliString],
    p_idx: int,
    tree_idxs,
    tableau: ConjugationTableau,
    recursive: bool = True,
) -> tuple[list[Gate], int]:
    """Synthesize the CNOT parity tree for ``paulis[p_idx]`` over the
    qubits ``tree_idxs``, guided by the tableau-updated successors
    ``paulis[p_idx+1:]``.  Returns the CNOT gates and the tree root.

    The gates form a spanning tree of exactly ``len(tree_idxs) - 1``
    CNOTs whose target-directed paths accumulate the parity of every
    tree qubit into the root.
    """
    idxs = sorted(set(tree_idxs))
    if not idxs:
        raise EmptyTree("tree synthesis needs at least one qubit")
    cache: dict[int, tuple[int, int] | None] = {}

    def guidance(level: int):
        j = p_idx + level
        if not 0 <= j < len(paulis):
            return None
        if level not in cache:
            p = paulis[j]
            gx, gz, _ = tableau.conj_raw(p.x, p.z, 1)
            cache[level] = (gx, gz)
        return cache[level]

    out: list[tuple[int, int]] = []
    if recursive:
        roots = _synth_recursive(idxs, 1, guidance, out)
    else:
        roots = _chain_groups(idxs, guidance(1), out)
    root = _connect_roots(roots, out)
    return [cx(a, b) for a, b in out], root


def _score_candidates(terms, i, tableau, px, pz):
    """Index of the candidate (positions > i) with the fewest non-identity
    letters after simulating extraction of the current string's basis
    layer and non-recursive tree keyed on that candidate."""
    supp = _support(px | pz)
    basis = [(q, _letter_at(px, pz, q)) for q in supp]
    best_w = best_j = None
    for j in range(i + 1, len(terms)):
        p = terms[j].pauli
        bx, bz, _ = tableau.conj_raw(p.x, p.z, 1)
        for q, letter in basis:
            if letter == "X":
                bx, bz = _h_bits(bx, bz, q)
            elif letter == "Y":
                bz ^= ((bx >> q) & 1) << q
                bx, bz = _h_bits(bx, bz, q)
        out: list[tuple[int, int]] = []
        _connect_roots(_chain_groups(supp, (bx, bz), out), out)
        for c, t in out:
            bx, bz = _cx_bits(bx, bz, c, t)
        w = (bx | bz).bit_count()
        if best_w is None or w < best_w:
            best_w, best_j = w, j
    return best_j


def find_next_pauli(block, pauli_idx: int, tableau: ConjugationTableau) -> int:
    """Pick the best successor for ``block[pauli_idx]`` among later block
    positions; ties break toward the smallest index.  With no candidates
    the untouched ``pauli_idx + 1`` is returned."""
    terms = block.terms if isinstance(block, CommuteBlock) else list(block)
    if pauli_idx + 1 >= len(terms):
        return pauli_idx + 1
    cur = terms[pauli_idx].pauli
    px, pz, _ = tableau.conj_raw(cur.x, cur.z, cur.sign)
    return _score_candidates(terms, pauli_idx, tableau, px, pz)


def extract(terms) -> ExtractionResult:
    """Compile a list of Pauli rotations into an optimized circuit plus
    the Clifford circuit extracted to its end.

    Identity terms contribute only a global phase; they are skipped with
    a warning.  The result satisfies extracted * opt_circuit == the
    product of the input rotations, up to global phase.
    """
    terms = list(terms)
    if not terms:
        raise ValueError("cannot extract from an empty term list")
    n = terms[0].pauli.n
    kept: list[PauliTerm] = []
    kept_idx: list[int] = []
    skipped = 0
    for k, t in enumerate(terms):
        if t.pauli.n != n:
            raise MixedQubitCounts(f"term {k} acts on {t.pauli.n} qubits, expected {n}")
        if t.pauli.x | t.pauli.z:
            kept.append(t)
            kept_idx.append(k)
        else:
            warnings.warn(
                f"term {k} is the identity; it only adds a global phase and was skipped",
                stacklevel=2,
            )
            skipped += 1

    tab = identity_tableau(n)
    gates: list[Gate] = []
    emitted_order: list[int] = []
    weights: list[int] = []
    reorders = 0
    blocks = convert_commute_sets(kept) if kept else []

    pos = 0
    for bi, block in enumerate(blocks):
        work = list(zip(kept_idx[pos : pos + len(block.terms)], block.terms))
        pos += len(block.terms)
        # guidance may run past the block: later blocks keep their input
        # order until their own turn, so their strings are usable as-is
        tail = [t.pauli for b in blocks[bi + 1 :] for t in b.terms]
        for i in range(len(work)):
            orig_idx, term = work[i]
            px, pz, psign = tab.conj_raw(term.pauli.x, term.pauli.z, term.pauli.sign)
            if i + 1 < len(work):
                j = _score_candidates([t for _, t in work], i, tab, px, pz)
                if j is not None and j != i + 1:
                    work.insert(i + 1, work.pop(j))
                    reorders += 1
            supp = _support(px | pz)
            for q in supp:
                letter = _letter_at(px, pz, q)
                if letter == "X":
                    gates.append(h(q))
                    tab.append_gate(gates[-1])
                elif letter == "Y":
                    gates.append(sdg(q))
                    tab.append_gate(gates[-1])
                    gates.append(h(q))
                    tab.append_gate(gates[-1])
            seq = [t.pauli for _, t in work] + tail
            tree, root = tree_synthesis(seq, i, supp, tab, recursive=True)
            for g in tree:
                gates.append(g)
                tab.append_gate(g)
            gates.append(rz(root, -2.0 * term.coeff * psign))
            emitted_order.append(orig_idx)
            weights.append(len(supp))

    stats = {
        "rotations": len(emitted_order),
        "blocks": len(blocks),
        "block_sizes": tuple(len(b.terms) for b in blocks),
        "reorders": reorders,
        "skipped_identity_terms": skipped,
        "emitted_order": tuple(emitted_order),
        "weights": tuple(weights),
    }
    return ExtractionResult(Circuit(n, tuple(gates)), tab, tab.extracted_circuit(), stats)


def native_circuit(terms, n: int | None = None) -> Circuit:
    """Reference synthesis without extraction: every rotation becomes a
    mirrored basis-layer/chain/RZ/inverse-chain/inverse-layer block, so a
    weight-w term costs 2(w-1) CNOTs.  Identity terms are skipped."""
    terms = list(terms)
    if n is None:
        if not terms:
            raise ValueError("need terms or an explicit qubit count")
        n = terms[0].pauli.n
    gates: list[Gate] = []
    for k, t in enumerate(terms):
        p = t.pauli
        if p.n != n:
            raise MixedQubitCounts(f"term {k} acts on {p.n} qubits, expected {n}")
        supp = _support(p.x | p.z)
        if not supp:
            continue
        body = basis_change_gates(p)
        body += [cx(supp[k2], supp[k2 + 1]) for k2 in range(len(supp) - 1)]
        gates += body
        gates.append(rz(supp[-1], -2.0 * t.coeff * p.sign))
        gates += [inverse(g) for g in reversed(body)]
    return Circuit(n, tuple(gates))
