"""Rationality decision tree for the conic bundle threefold of a quadric triple."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .bitangents import BitangentSet, real_bitangents
from .ijt import IJTVerdict, ijt_verdict
from .model import QuadricTriple, quartic_from_triple, require_valid, twist
from .signatures import GammaProfile, pi1_surjective, signature_profile, y_real_components
from .topology import IsotopyClass, OvalReport, Q1Signs, isotopy_class, q1_sign_per_oval, u_delta_side


class Status(str, Enum):
    Rational = "Rational"
    IrrationalNoRealPoints = "IrrationalNoRealPoints"
    IrrationalDisconnected = "IrrationalDisconnected"
    IrrationalIJT = "IrrationalIJT"
    Unknown = "Unknown"

    def __str__(self):
        return self.value


class InconsistentCertificates(AssertionError):
    pass


@dataclass(frozen=True)
class Rule:
    rule: str
    status: Status
    certificate: str


@dataclass(frozen=True)
class Analysis:
    """Everything the decision tree reads, computed once per triple."""

    triple: QuadricTriple
    profile: GammaProfile
    components: int
    surjective: bool
    oval_report: OvalReport
    q1: Q1Signs
    bitangents: BitangentSet
    u_delta_sign: int
    ijt: IJTVerdict

    @property
    def isotopy(self) -> IsotopyClass:
        return self.oval_report.isotopy_class


@dataclass(frozen=True)
class RationalityVerdict:
    status: Status
    reason: tuple[Rule, ...] = field(default=())
    analysis: Optional[Analysis] = field(default=None, repr=False, compare=False)

    @property
    def rule(self) -> str:
        return self.reason[0].rule if self.reason else ""


def _needs_search(components: int, surjective: bool, q1: Q1Signs, cls: IsotopyClass) -> bool:
    """Whether the torsor search can still change the verdict once the
    exact rules R0..R5 have been evaluated."""
    if components != 1 or surjective or q1.deltatilde_has_real_point:
        return False
    return cls in (IsotopyClass.Empty, IsotopyClass.TwoNonNested)


def analyse(T: QuadricTriple, seed: int = 0, ijt_budget: int = 64, search: str = "always") -> Analysis:
    """All certificates for the decision tree.

    ``search="always"`` runs the torsor search in every case (a consistency
    check when an exact rule already decides); ``"needed"`` runs it only
    when it can change the verdict.
    """
    if search not in ("always", "needed"):
        raise ValueError("search must be 'always' or 'needed'")
    require_valid(T)
    f = quartic_from_triple(T)
    profile = signature_profile(T)
    surj = pi1_surjective(profile)
    report = isotopy_class(f, seed)
    q1 = q1_sign_per_oval(T, report)
    bs = real_bitangents(f, seed)
    side = u_delta_side(f, bs).u_delta_sign
    comps = y_real_components(profile)
    run = search == "always" or _needs_search(comps, surj, q1, report.isotopy_class)
    iv = ijt_verdict(T, side, surj, ijt_budget, seed, bs, search=run)
    return Analysis(T, profile, comps, surj, report, q1, bs, side, iv)


def decide(a: Analysis) -> RationalityVerdict:
    """Apply rules R0..R8 in order; the first match decides.

    Every rule that fires is recorded, so that contradictory certificates
    (a rational rule together with an irrational one) are detected.
    """
    cls = a.isotopy
    fired: list[Rule] = []
    sig = " ".join(str(s) for s in a.profile.interval_signatures)
    if a.components == 0:
        fired.append(Rule("R0", Status.IrrationalNoRealPoints, "no indefinite arc: Y(R) empty"))
    if a.components >= 2:
        fired.append(Rule("R1", Status.IrrationalDisconnected, f"{a.components} components of Y(R)"))
    if a.surjective:
        fired.append(Rule("R2", Status.Rational, f"no definite fiber, arcs {sig}"))
    if a.q1.deltatilde_has_real_point:
        fired.append(Rule("R3", Status.Rational, "Q1 > 0 on an oval: the cover has real points"))
    if cls is IsotopyClass.FourOvals:
        fired.append(Rule("R4", Status.Rational, "four ovals"))
    if cls is IsotopyClass.ThreeOvals and a.components == 1:
        fired.append(Rule("R5", Status.Rational, "three ovals, Y(R) connected"))
    if a.ijt.status == "Obstructed":
        fired.append(Rule("R6", Status.IrrationalIJT, a.ijt.reason))
    if cls in (IsotopyClass.Empty, IsotopyClass.TwoNonNested) and a.components == 1 and a.ijt.status == "Vanishes":
        fired.append(Rule("R7", Status.Rational, a.ijt.reason))

    statuses = {r.status for r in fired}
    if Status.Rational in statuses and len(statuses) > 1:
        raise InconsistentCertificates("rules disagree: " + ", ".join(r.rule for r in fired))
    rational_rules = [r for r in fired if r.status is Status.Rational]
    if rational_rules and not a.surjective:
        raise InconsistentCertificates(f"{rational_rules[0].rule} fired but some real fiber is empty")
    if not fired:
        return RationalityVerdict(Status.Unknown, (Rule("R8", Status.Unknown, "no rule applies"),), a)
    return RationalityVerdict(fired[0].status, tuple(fired), a)


def classify(T: QuadricTriple, seed: int = 0, ijt_budget: int = 64, search: str = "always") -> RationalityVerdict:
    return decide(analyse(T, seed, ijt_budget, search))


def classify_with_twist(T: QuadricTriple, seed: int = 0, ijt_budget: int = 64,
                        search: str = "always") -> tuple[RationalityVerdict, RationalityVerdict]:
    a = classify(T, seed, ijt_budget, search)
    b = classify(twist(T), seed, ijt_budget, search)
    if a.analysis.isotopy is not IsotopyClass.Empty:
        if Status.Rational not in (a.status, b.status):
            raise InconsistentCertificates("real curve nonempty but neither the triple nor its twist is rational")
    return a, b
