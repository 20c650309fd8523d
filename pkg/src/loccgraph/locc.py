"""Measure-and-tell protocols: Alice measures, Bob finishes.

A protocol is an Alice POVM whose outcome operators only respond to states
in their declared support, plus one Bob plan per outcome: an orthonormal
basis that isolates each surviving state. Protocols are synthesized from
Gram splittings (each rank-one piece lifts to a POVM element through a
least-squares preimage) and checked by exact simulation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .decomposition import Decomposition, DecompositionTerm
from .errors import (
    InvalidCover,
    InvalidInput,
    NonOrthogonalBobClique,
    NotPSD,
)
from .linalg import (
    DEFAULT_TOL,
    Tolerance,
    complete_basis,
    eigh_desc,
    hermitize,
    least_squares_preimage,
    numeric_rank,
    orthonormal_columns,
)
from .states import ProductStateSet


@dataclass(frozen=True)
class PovmElement:
    """Rank-one piece weight * dir dir* contributing to outcome `outcome`."""

    outcome: int
    weight: float
    direction: np.ndarray
    support: frozenset[int]

    def matrix(self) -> np.ndarray:
        return self.weight * np.outer(self.direction, self.direction.conj())


@dataclass(frozen=True)
class Povm:
    dim: int
    elements: tuple[PovmElement, ...]

    def outcome_ids(self) -> tuple[int, ...]:
        return tuple(sorted({e.outcome for e in self.elements}))

    def outcome_operator(self, outcome: int) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for e in self.elements:
            if e.outcome == outcome:
                out += e.matrix()
        return out

    def outcome_support(self, outcome: int) -> frozenset[int]:
        sups = [e.support for e in self.elements if e.outcome == outcome]
        return frozenset().union(*sups) if sups else frozenset()

    def total(self) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for e in self.elements:
            out += e.matrix()
        return out


@dataclass(frozen=True)
class BobPlan:
    """Basis Bob measures for one Alice outcome; labels[j] names the state
    column j detects, None marks padding directions no state should hit."""

    outcome: int
    basis: np.ndarray
    labels: tuple[Optional[str], ...]


@dataclass(frozen=True)
class Protocol:
    alice: Povm
    bob: tuple[BobPlan, ...]

    def plan_for(self, outcome: int) -> BobPlan:
        for p in self.bob:
            if p.outcome == outcome:
                return p
        raise InvalidInput(f"no Bob plan for outcome {outcome}")


@dataclass(frozen=True)
class PovmReport:
    ok: bool
    completeness_deviation: float
    min_weight: float
    max_support_leakage: float


@dataclass(frozen=True)
class ProtocolReport:
    per_state: tuple[tuple[str, float], ...]
    min_success: float
    completeness_deviation: float
    max_support_leakage: float


def _bob_plan(
    states: ProductStateSet, outcome: int, support: frozenset[int], tol: Tolerance
) -> BobPlan:
    members = sorted(support)
    vectors = []
    for i in members:
        for j in members:
            if j <= i:
                continue
            ov = abs(np.vdot(states.bob[i - 1], states.bob[j - 1]))
            if ov > 100 * tol.zero_tol:
                raise NonOrthogonalBobClique(
                    f"states {states.labels[i-1]} and {states.labels[j-1]} overlap "
                    f"({ov:.3g}) on Bob's side within outcome {outcome}"
                )
        vectors.append(states.bob[i - 1])
    partial = orthonormal_columns(vectors, states.d_bob, tol)
    if partial.shape[1] != len(members):
        raise NonOrthogonalBobClique(
            f"Bob states in outcome {outcome} are linearly dependent"
        )
    basis = complete_basis(partial, tol)
    labels: list[Optional[str]] = [states.labels[i - 1] for i in members]
    labels += [None] * (basis.shape[1] - len(members))
    return BobPlan(outcome, basis, tuple(labels))


def synthesize_protocol(
    states: ProductStateSet,
    dec: Decomposition,
    tol: Tolerance = DEFAULT_TOL,
) -> Protocol:
    """Lift a Gram splitting to a full protocol, one outcome per term.

    Each term v v* pulls back through the Alice frame X (solve X* phi = v)
    to the element |phi0><phi0| of weight ||phi0||^2. The pieces then sum to
    the identity on the span of Alice's states; whatever is missing on the
    orthogonal complement is appended to the last outcome, where no state
    can trigger it.
    """
    if dec.n != states.n:
        raise InvalidInput(f"splitting over {dec.n} states, set has {states.n}")
    if not dec.terms:
        raise InvalidInput("empty splitting")
    x = states.alice_frame()
    elements: list[PovmElement] = []
    for k, term in enumerate(dec.terms, start=1):
        phi, mu = least_squares_preimage(x, term.vector, tol)
        elements.append(PovmElement(k, mu**2, phi, term.support))

    povm = Povm(states.d_alice, tuple(elements))
    deficit = hermitize(np.eye(states.d_alice) - povm.total())
    w, v = eigh_desc(deficit)
    if w[-1] < -10 * tol.psd_tol:
        raise NotPSD(f"splitting overshoots the identity by {-w[-1]:.3g}")
    last = elements[-1]
    extra = []
    for col in range(len(w)):
        if w[col] > tol.zero_tol:
            extra.append(
                PovmElement(last.outcome, float(w[col]), v[:, col], last.support)
            )
    if extra:
        povm = Povm(states.d_alice, tuple(elements + extra))

    plans = tuple(
        _bob_plan(states, k, term.support, tol)
        for k, term in enumerate(dec.terms, start=1)
    )
    return Protocol(povm, plans)


def two_clique_protocol(
    states: ProductStateSet,
    cover: Sequence[frozenset[int]],
    tol: Tolerance = DEFAULT_TOL,
) -> Protocol:
    """Projective two-outcome protocol from a cover by one or two cliques.

    Requirements on the cover (not re-derived here, validated numerically
    downstream): the parts jointly contain every state, every pair of states
    with overlapping Alice parts lies inside a single part, and each part is
    Bob-orthogonal. Alice projects onto the span of the states exclusive to
    the first part; the complement reports the second.
    """
    cover = [frozenset(c) for c in cover]
    if not 1 <= len(cover) <= 2:
        raise InvalidCover(f"need one or two parts, got {len(cover)}")
    everything = set(range(1, states.n + 1))
    if set().union(*cover) != everything:
        raise InvalidCover("cover misses some states")
    if len(cover) == 1:
        dim = states.d_alice
        eye = np.eye(dim)
        elements = tuple(
            PovmElement(1, 1.0, eye[:, c], frozenset(cover[0])) for c in range(dim)
        )
        return Protocol(
            Povm(dim, elements), (_bob_plan(states, 1, cover[0], tol),)
        )

    v1, v2 = cover
    only1 = sorted(v1 - v2)
    span1 = orthonormal_columns(
        [states.alice[i - 1] for i in only1], states.d_alice, tol
    )
    full = complete_basis(span1, tol)
    rest = full[:, span1.shape[1]:]
    elements = [
        PovmElement(1, 1.0, span1[:, c], frozenset(v1)) for c in range(span1.shape[1])
    ] + [
        PovmElement(2, 1.0, rest[:, c], frozenset(v2)) for c in range(rest.shape[1])
    ]
    elements = [e for e in elements if e.weight > 0]
    outcomes = sorted({e.outcome for e in elements})
    plans = tuple(
        _bob_plan(states, k, cover[k - 1], tol) for k in outcomes
    )
    return Protocol(Povm(states.d_alice, tuple(elements)), plans)


def povm_to_decomposition(
    states: ProductStateSet, povm: Povm, tol: Tolerance = DEFAULT_TOL
) -> Decomposition:
    """Push a POVM through the Alice frame: outcome E gives X* E X, split
    into rank-one terms on the states the outcome can see."""
    x = states.alice_frame()
    scale = max(1.0, float(np.linalg.norm(x) ** 2))
    m = x.conj().T @ x
    terms: list[DecompositionTerm] = []
    total = np.zeros((states.n, states.n), dtype=complex)
    for outcome in povm.outcome_ids():
        mk = hermitize(x.conj().T @ povm.outcome_operator(outcome) @ x)
        wmin = float(np.linalg.eigvalsh(mk).min())
        if wmin < -tol.psd_tol * scale:
            raise NotPSD(f"outcome {outcome} pushes to eigenvalue {wmin:.3g}")
        support = frozenset(
            i + 1 for i in range(states.n) if mk[i, i].real > tol.zero_tol * scale
        )
        w, v = eigh_desc(mk)
        for col in range(len(w)):
            if w[col] <= tol.zero_tol * scale:
                continue
            vec = np.sqrt(w[col]) * v[:, col]
            vec[[i - 1 for i in range(1, states.n + 1) if i not in support]] = 0.0
            terms.append(DecompositionTerm(support, vec))
            total += np.outer(vec, vec.conj())
    residual = float(np.linalg.norm(hermitize(m) - total))
    return Decomposition(states.n, tuple(terms), residual)


def validate_povm(
    povm: Povm,
    states: Optional[ProductStateSet] = None,
    tol: Tolerance = DEFAULT_TOL,
) -> PovmReport:
    """Completeness, element positivity, and support discipline."""
    dev_eigs = np.linalg.eigvalsh(hermitize(povm.total() - np.eye(povm.dim)))
    completeness = float(np.abs(dev_eigs).max())
    min_weight = min((e.weight for e in povm.elements), default=0.0)
    leakage = 0.0
    if states is not None:
        for e in povm.elements:
            for i in range(1, states.n + 1):
                if i in e.support:
                    continue
                p = e.weight * abs(np.vdot(e.direction, states.alice[i - 1])) ** 2
                leakage = max(leakage, float(p))
    ok = (
        completeness <= 10 * tol.psd_tol
        and min_weight >= -tol.psd_tol
        and leakage <= 10 * tol.psd_tol
    )
    return PovmReport(ok, completeness, float(min_weight), leakage)


def simulate(
    states: ProductStateSet, protocol: Protocol, tol: Tolerance = DEFAULT_TOL
) -> ProtocolReport:
    """Exact outcome statistics of the two-round protocol on each state."""
    index = {lbl: i for i, lbl in enumerate(states.labels, start=1)}
    per_state: list[tuple[str, float]] = []
    leakage = 0.0
    for i in range(1, states.n + 1):
        a = states.alice[i - 1]
        b = states.bob[i - 1]
        success = 0.0
        for outcome in protocol.alice.outcome_ids():
            op = protocol.alice.outcome_operator(outcome)
            p_alice = float(np.real(np.vdot(a, op @ a)))
            if i not in protocol.alice.outcome_support(outcome):
                leakage = max(leakage, p_alice)
                continue
            plan = protocol.plan_for(outcome)
            p_bob = 0.0
            for col, lbl in enumerate(plan.labels):
                if lbl is not None and index.get(lbl) == i:
                    p_bob += abs(np.vdot(plan.basis[:, col], b)) ** 2
            success += p_alice * p_bob
        per_state.append((states.labels[i - 1], success))
    completeness = float(
        np.abs(
            np.linalg.eigvalsh(
                hermitize(protocol.alice.total() - np.eye(protocol.alice.dim))
            )
        ).max()
    )
    return ProtocolReport(
        tuple(per_state),
        min(p for _, p in per_state),
        completeness,
        float(leakage),
    )


def as_projective_basis(
    povm: Povm, tol: Tolerance = DEFAULT_TOL, match_tol: float = 1e-7
) -> Optional[np.ndarray]:
    """Columns of an orthonormal family when every outcome operator is a
    rank-one projector; None otherwise."""
    cols = []
    for outcome in povm.outcome_ids():
        op = povm.outcome_operator(outcome)
        w, v = eigh_desc(op)
        if abs(w[0] - 1.0) > match_tol:
            return None
        if len(w) > 1 and abs(w[1]) > match_tol:
            return None
        cols.append(v[:, 0])
    basis = np.column_stack(cols)
    overlap = basis.conj().T @ basis
    if np.abs(overlap - np.eye(len(cols))).max() > match_tol:
        return None
    return basis


def matches_projective_basis(
    povm: Povm, basis: np.ndarray, match_tol: float = 1e-7,
    span: Optional[np.ndarray] = None,
) -> bool:
    """True when the outcome operators are the rank-one projectors of the
    given basis columns, in some order (phases ignored).

    With a span (orthonormal columns) the comparison happens after
    compressing both sides onto it. Operators agreeing there act identically
    on every state inside the span; components outside never touch any
    state, so this is equality of the physically visible measurement.
    """
    basis = np.asarray(basis, dtype=complex)
    outcomes = povm.outcome_ids()
    if basis.shape[1] != len(outcomes):
        return False

    def compress(op: np.ndarray) -> np.ndarray:
        if span is None:
            return op
        return span.conj().T @ op @ span

    unused = list(range(basis.shape[1]))
    for outcome in outcomes:
        op = compress(povm.outcome_operator(outcome))
        hit = None
        for j in unused:
            proj = compress(np.outer(basis[:, j], basis[:, j].conj()))
            if np.linalg.norm(op - proj) <= match_tol:
                hit = j
                break
        if hit is None:
            return False
        unused.remove(hit)
    return True
