"""Absorbing an end-of-circuit Clifford into measurement post-processing.

Two modes are supported.  For expectation-value workloads every
observable O is rewritten to O' = conjugate(tableau, O) and measured in
the adjusted single-qubit basis; only the sign of O' enters the final
result.  For probability workloads the extracted Clifford (H and CNOT
gates only) is reduced to one Hadamard layer, appended to the executed
circuit, plus a CNOT network that is applied to measured bitstrings as
plain XORs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .circuit import Circuit, Gate
from .errors import BitstringLengthMismatch, LengthMismatch
from .extract import basis_change_gates
from .pauli import PauliString
from .tableau import ConjugationTableau, decompose_h_cnot


@dataclass(frozen=True)
class TransformedObservable:
    """An observable rewritten through the extracted Clifford.

    ``basis_layer`` holds the single-qubit gates appended before
    measurement so that measuring Z-parities on the support of
    ``transformed`` estimates |transformed|; the sign is applied
    classically afterwards.
    """

    original: PauliString
    transformed: PauliString
    basis_layer: tuple[Gate, ...]


@dataclass(frozen=True)
class ProbabilityAbsorption:
    """One Hadamard layer plus a CNOT network equivalent to the extracted
    Clifford: executing [optimized circuit + H on h_mask] and pushing
    every measured bitstring through the network reproduces the original
    distribution."""

    n: int
    h_mask: frozenset[int]
    network: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class CountsHistogram:
    n: int
    counts: dict[str, int]
    shots: int

    def __post_init__(self):
        total = 0
        for bits, c in self.counts.items():
            if len(bits) != self.n or set(bits) - {"0", "1"}:
                raise BitstringLengthMismatch(
                    f"bitstring {bits!r} is not {self.n} binary digits"
                )
            if not isinstance(c, int) or c < 0:
                raise ValueError(f"count for {bits!r} must be a non-negative integer")
            total += c
        if total != self.shots:
            raise ValueError(f"counts sum to {total}, expected {self.shots} shots")


def absorb_observables(
    tableau: ConjugationTableau, observables: list[PauliString]
) -> list[TransformedObservable]:
    """Rewrite each observable through the tableau; the mapping back to
    the originals is positional."""
    out = []
    for o in observables:
        if o.n != tableau.n:
            raise LengthMismatch(f"{o.n}-qubit observable vs {tableau.n}-qubit tableau")
        t = tableau.conjugate(o)
        out.append(TransformedObservable(o, t, tuple(basis_change_gates(t))))
    return out


def absorb_probabilities(extracted: Circuit) -> ProbabilityAbsorption:
    """Reduce an H+CNOT extracted Clifford to the measurement-side form:
    the Hadamard layer is appended to the executed circuit and the
    network acts on the measured bits.

    The network returned by the layer collapse sits behind the Hadamard
    layer; commuting it to the measurement side conjugates each CNOT
    through the layer (swapping it when both qubits are in the mask).
    Raises NotReducible when no such form exists (switch to observable
    mode in that case) and NonHCnotGate on other gates.
    """
    h_mask, network = decompose_h_cnot(extracted)
    measured: list[tuple[int, int]] = []
    for c, t in network:
        ci, ti = c in h_mask, t in h_mask
        if ci != ti:
            raise NotReducible(f"Hadamard layer straddles network gate cx({c},{t})")
        measured.append((t, c) if ci else (c, t))
    return ProbabilityAbsorption(extracted.n, h_mask, tuple(measured))


def apply_network(network, bits: str) -> str:
    """Push one bitstring through a CNOT network in time order
    (bit[target] ^= bit[control]); character q is qubit q."""
    b = [int(ch) for ch in bits]
    for c, t in network:
        b[t] ^= b[c]
    return "".join("1" if v else "0" for v in b)


def postprocess_counts(pa: ProbabilityAbsorption, hist: CountsHistogram) -> CountsHistogram:
    """Map every measured bitstring through the network.  The map is a
    bijection, so the total shot count is preserved."""
    if hist.n != pa.n:
        raise BitstringLengthMismatch(f"{hist.n}-bit histogram vs {pa.n}-qubit absorption")
    out: dict[str, int] = {}
    for bits, c in hist.counts.items():
        key = apply_network(pa.network, bits)
        out[key] = out.get(key, 0) + c
    return CountsHistogram(hist.n, out, hist.shots)


def map_expectations(records: list[TransformedObservable], measured: list[float]) -> list[float]:
    """Apply the transformed observables' signs to measured expectation
    values, element-wise."""
    if len(records) != len(measured):
        raise LengthMismatch(f"{len(records)} records vs {len(measured)} values")
    return [r.transformed.sign * float(v) for r, v in zip(records, measured)]
