"""Deciding isomorphism of formal matrix rings from their principal matrices.

Verdicts are three-valued.  A negative answer ("different canonical forms
mean non-isomorphic rings") is only sound when the base ring R satisfies the
(n, m)-condition and R/P(R) is indecomposable, so it is gated on
:func:`check_hypotheses`.  A positive answer is backed by an explicit
permutation ``tau`` with ``permute(sigma1, tau) == sigma2``; then
``A -> tau A`` is a ring isomorphism and no hypotheses are needed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .errors import PreconditionError, SchemaError, StructuralError
from .multipliers import (
    MultiplierSystem,
    Permutation,
    check_s_candidate,
    classify,
    permute,
    principal_matrix,
    validate_identities,
)
from .patterns import PrincipalPattern, canonical_form, equivalence_classes
from .rings import INTEGERS, RingSpec, factorize, is_nilpotent

ISOMORPHIC = "Isomorphic"
NOT_ISOMORPHIC = "NotIsomorphic"
UNKNOWN = "Unknown"


@dataclass(frozen=True)
class HypothesisReport:
    nm_condition: bool
    quotient_indecomposable: bool
    s_in_prime_radical: Optional[bool] = None
    notes: tuple = ()

    @property
    def holds(self) -> bool:
        """Both base-ring hypotheses of the necessity direction."""
        return self.nm_condition and self.quotient_indecomposable

    def to_json(self) -> dict:
        return {
            "nm_condition": self.nm_condition,
            "quotient_indecomposable": self.quotient_indecomposable,
            "s_in_prime_radical": self.s_in_prime_radical,
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class IsoVerdict:
    status: str
    reason: str
    witness: Optional[Permutation] = None

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "reason": self.reason,
            "witness": None if self.witness is None else self.witness.to_json(),
        }

    @classmethod
    def from_json(cls, obj, path="$") -> "IsoVerdict":
        if not isinstance(obj, dict) or obj.get("status") not in (ISOMORPHIC, NOT_ISOMORPHIC, UNKNOWN):
            raise SchemaError(f"{path}.status", "unknown verdict status")
        if not isinstance(obj.get("reason"), str):
            raise SchemaError(f"{path}.reason", "reason must be a string")
        w = obj.get("witness")
        witness = None if w is None else Permutation.from_json(w, f"{path}.witness")
        return cls(obj["status"], obj["reason"], witness)


def check_hypotheses(ring: RingSpec, s: Optional[int] = None) -> HypothesisReport:
    notes = ["(n,m)-condition: the base ring is commutative"]
    if ring.kind == INTEGERS:
        indec = True
        notes.append("R/P(R) = Z is a domain, hence indecomposable")
    else:
        primes = sorted(factorize(ring.modulus))
        indec = len(primes) == 1
        rad = 1
        for q in primes:
            rad *= q
        if indec:
            notes.append(f"R/P(R) = Z/{rad} is a field ({ring.modulus} is a prime power)")
        else:
            notes.append(f"R/P(R) = Z/{rad} splits over the primes {primes}")
    s_in_p = None
    if s is not None:
        s_in_p = is_nilpotent(s, ring)
        notes.append(f"s = {s} {'is' if s_in_p else 'is not'} nilpotent in {ring}, "
                     f"so s {'lies' if s_in_p else 'does not lie'} in P(R)")
    return HypothesisReport(True, indec, s_in_p, tuple(notes))


def _pattern_of(sigma: MultiplierSystem, zero_symbol: int) -> PrincipalPattern:
    return PrincipalPattern(sigma.n, sigma.ring, zero_symbol, principal_matrix(sigma))


def same_canonical(t1: PrincipalPattern, t2: PrincipalPattern) -> bool:
    if t1.n != t2.n:
        return False
    return canonical_form(t1).block_sizes == canonical_form(t2).block_sizes


def _relabelings(t1: PrincipalPattern, t2: PrincipalPattern):
    """Every tau with ``tau t1 == t2`` (class-preserving relabelings), canonical one first."""
    c1, c2 = canonical_form(t1), canonical_form(t2)
    yield c1.sigma.compose(c2.sigma.inverse())
    classes1 = equivalence_classes(t1)
    classes2 = equivalence_classes(t2)
    by_size = {}
    for c in classes1:
        by_size.setdefault(len(c), []).append(c)
    # tau must send each class of t2 onto a class of t1 of the same size
    groups2 = {}
    for c in classes2:
        groups2.setdefault(len(c), []).append(c)
    sizes = sorted(groups2)
    n = t1.n

    def class_matchings(idx):
        if idx == len(sizes):
            yield []
            return
        size = sizes[idx]
        for perm in itertools.permutations(by_size[size]):
            for rest in class_matchings(idx + 1):
                yield list(zip(groups2[size], perm)) + rest

    for matching in class_matchings(0):
        for inner in itertools.product(*(itertools.permutations(dst) for _, dst in matching)):
            images = [0] * n
            for (src, _), dst in zip(matching, inner):
                for i, j in zip(src, dst):
                    images[i] = j
            yield Permutation(tuple(images))


def find_relabeling(sigma1: MultiplierSystem, sigma2: MultiplierSystem, t1, t2) -> Optional[Permutation]:
    for tau in _relabelings(t1, t2):
        if permute(sigma1, tau) == sigma2:
            return tau
    return None


def _require_pair(sigma1, sigma2):
    if sigma1.ring != sigma2.ring:
        raise StructuralError(f"rings differ: {sigma1.ring} vs {sigma2.ring}")
    if sigma1.n != sigma2.n:
        raise StructuralError(f"orders differ: {sigma1.n} vs {sigma2.n}")
    for name, sig in (("first", sigma1), ("second", sigma2)):
        if validate_identities(sig):
            raise PreconditionError(f"{name} multiplier system fails its defining identities")


def _sizes(t):
    return list(canonical_form(t).block_sizes)


def decide_iso_01(sigma1: MultiplierSystem, sigma2: MultiplierSystem) -> IsoVerdict:
    _require_pair(sigma1, sigma2)
    c1, c2 = classify(sigma1), classify(sigma2)
    if not (c1.is01 and c2.is01):
        raise PreconditionError("decide_iso_01 needs two (01)-systems")
    t1, t2 = _pattern_of(sigma1, 0), _pattern_of(sigma2, 0)
    ring = sigma1.ring
    if same_canonical(t1, t2):
        if c1.isK0 and c2.isK0:
            tau = find_relabeling(sigma1, sigma2, t1, t2)
            if tau is None:
                raise AssertionError("K0-form systems with equal canonical forms did not relabel")
            return IsoVerdict(
                ISOMORPHIC,
                f"K0 sufficiency: both systems are K0-form with canonical form {_sizes(t1)}; "
                f"permute(sigma1, tau) == sigma2",
                tau,
            )
        tau = find_relabeling(sigma1, sigma2, t1, t2)
        if tau is not None:
            return IsoVerdict(ISOMORPHIC, "the systems differ by the relabeling tau, so A -> tau A is an isomorphism", tau)
        return IsoVerdict(
            UNKNOWN,
            f"canonical forms coincide ({_sizes(t1)}) but the systems are not both K0-form "
            "and no relabeling matches them",
        )
    hyp = check_hypotheses(ring)
    if hyp.holds:
        return IsoVerdict(
            NOT_ISOMORPHIC,
            f"canonical-form necessity: canonical forms {_sizes(t1)} vs {_sizes(t2)} differ; "
            f"hypotheses verified for ring {_ring_name(ring)}",
        )
    return IsoVerdict(
        UNKNOWN,
        f"canonical forms {_sizes(t1)} vs {_sizes(t2)} differ but R/P(R) is decomposable for "
        f"ring {_ring_name(ring)}",
    )


def decide_iso_s1(sigma1: MultiplierSystem, sigma2: MultiplierSystem, s: int) -> IsoVerdict:
    _require_pair(sigma1, sigma2)
    ring = sigma1.ring
    check_s_candidate(s, ring)
    if not (classify(sigma1, s).isS1 and classify(sigma2, s).isS1):
        raise PreconditionError(f"decide_iso_s1 needs two systems with multipliers in {{1, {s}}}")
    t1, t2 = _pattern_of(sigma1, s), _pattern_of(sigma2, s)
    if same_canonical(t1, t2):
        tau = find_relabeling(sigma1, sigma2, t1, t2)
        if tau is not None:
            return IsoVerdict(
                ISOMORPHIC,
                f"(s1) sufficiency: canonical forms coincide ({_sizes(t1)}); "
                "permute(sigma1, tau) == sigma2",
                tau,
            )
        return IsoVerdict(
            UNKNOWN,
            f"canonical forms coincide ({_sizes(t1)}) but no relabeling matches the full systems",
        )
    hyp = check_hypotheses(ring, s)
    if hyp.holds and hyp.s_in_prime_radical:
        return IsoVerdict(
            NOT_ISOMORPHIC,
            f"(s1) canonical-form necessity: canonical forms {_sizes(t1)} vs {_sizes(t2)} differ; "
            f"hypotheses verified for ring {_ring_name(ring)} with s = {s} in P(R)",
        )
    failed = []
    if not hyp.quotient_indecomposable:
        failed.append("R/P(R) is decomposable")
    if not hyp.s_in_prime_radical:
        failed.append(f"s = {s} is not in P(R)")
    return IsoVerdict(
        UNKNOWN,
        f"canonical forms {_sizes(t1)} vs {_sizes(t2)} differ but " + " and ".join(failed),
    )


def decide_quotient_iso(t1: PrincipalPattern, t2: PrincipalPattern, ring: RingSpec) -> IsoVerdict:
    """Whether K1/P(K1) and K2/P(K2) are isomorphic for the realized (01)-rings over ``ring``."""
    if not (t1.is01 and t2.is01):
        raise PreconditionError("decide_quotient_iso needs (01)-patterns")
    hyp = check_hypotheses(ring)
    if not hyp.holds:
        return IsoVerdict(UNKNOWN, f"R/P(R) is decomposable for ring {_ring_name(ring)}")
    if same_canonical(t1, t2):
        tau = next(_relabelings(t1, t2))
        return IsoVerdict(ISOMORPHIC, f"semisimple quotients: same canonical form {_sizes(t1)}", tau)
    return IsoVerdict(
        NOT_ISOMORPHIC,
        f"semisimple quotients: canonical forms {_sizes(t1)} vs {_sizes(t2)} differ",
    )


def _ring_name(ring: RingSpec) -> str:
    return "Z" if ring.kind == INTEGERS else f"mod {ring.modulus}"
