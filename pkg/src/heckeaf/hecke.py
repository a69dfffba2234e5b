"""Hecke eigenform data and the stationary AF pipeline.

Loads weight-2 eigenform fixtures (coefficients as exact elements of the
coefficient field), verifies the Hecke relations, and drives the chain

    coefficient module -> endomorphism order -> expanding unit
    -> action matrix -> non-negative form -> block factorization
    -> stationary AF descriptor / dimension group,

with the degree-1 case collapsing to the trivial algebra.  Conjugate
eigenforms share their coordinate data: conjugation is a change of the
working real embedding, so the conjugate pipeline reuses the same module
and unit (their action matrix is coordinate-identical), which makes the
equal-characteristic-polynomial claim checkable literally.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .afalg import (
    DimensionGroup,
    StationaryAF,
    TrivialAF,
    companion_check,
    dimension_group,
)
from .errors import (
    HeckeRelationViolated,
    InsufficientCoefficients,
    ModuleNotStable,
    NotGenerated,
    NotNormalized,
    NotTotallyReal,
    SchemaError,
)
from .exactnum.field import FieldElement, NumberField, eval_embedding, make_field
from .exactnum.intmat import charpoly
from .exactnum.lattice import OrderRing, ZModule, endomorphism_ring, module_from_generators
from .exactnum.polynomial import IntPolynomial
from .exactnum.units import UnitElement, find_unit, make_nonnegative, multiplication_matrix
from .mcf import JpaExpansion, bauer_factorize, periodicity_roundtrip, satz12_eigenvector

MIN_COEFFS = 20
HECKE_CHECK_BOUND = 13


@dataclass(frozen=True)
class NewformData:
    label: str
    level: int
    weight: int
    field: NumberField
    coeffs: tuple  # c(1) .. c(M) as FieldElements
    module_rows: tuple | None = None
    embedding_index: int | None = None

    @property
    def count(self) -> int:
        return len(self.coeffs)

    def c(self, m: int) -> FieldElement:
        if not 1 <= m <= self.count:
            raise InsufficientCoefficients(
                f"coefficient c({m}) beyond the stored range {self.count}",
                required=m,
            )
        return self.coeffs[m - 1]

    def working_embedding_index(self) -> int:
        if self.embedding_index is not None:
            return self.embedding_index
        return len(self.field.real_roots) - 1  # largest real root


def _parse_rational(s) -> Fraction:
    if isinstance(s, (int, str)):
        return Fraction(s)
    raise SchemaError(f"expected a rational string, got {type(s).__name__}")


def _primes_up_to(bound: int):
    sieve = [True] * (bound + 1)
    out = []
    for p in range(2, bound + 1):
        if sieve[p]:
            out.append(p)
            for k in range(p * p, bound + 1, p):
                sieve[k] = False
    return out


def load_newform(source) -> NewformData:
    """Parse and fully verify a newform fixture.

    Accepts a JSON string or an already-decoded dict.  Checks the schema,
    normalization c(1) = 1, coprime multiplicativity, and the prime-power
    recursions before returning.
    """
    if isinstance(source, (str, bytes)):
        try:
            data = json.loads(source)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not valid JSON: {exc}") from exc
    elif isinstance(source, dict):
        data = source
    else:
        raise SchemaError(f"cannot load a {type(source).__name__}")

    for key in ("label", "level", "weight", "field_poly", "an"):
        if key not in data:
            raise SchemaError(f"missing required field {key!r}")
    label = data["label"]
    level = data["level"]
    weight = data["weight"]
    if not isinstance(label, str):
        raise SchemaError("label must be a string")
    if not isinstance(level, int) or level < 1:
        raise SchemaError("level must be a positive integer")
    if weight != 2:
        raise SchemaError(f"weight {weight} not supported; this tool is weight-2 only")
    field_poly = data["field_poly"]
    if not isinstance(field_poly, list) or not all(isinstance(c, int) for c in field_poly):
        raise SchemaError("field_poly must be a list of integers, lowest degree first")
    field = make_field(IntPolynomial(tuple(field_poly)))

    an = data["an"]
    if not isinstance(an, list) or len(an) < MIN_COEFFS:
        raise SchemaError(f"need at least {MIN_COEFFS} coefficients, got {len(an)}")
    coeffs = []
    for idx, row in enumerate(an, start=1):
        if not isinstance(row, list) or len(row) > field.degree:
            raise SchemaError(f"coefficient {idx} has a bad coordinate vector")
        coeffs.append(field.element([_parse_rational(x) for x in row]))
    coeffs = tuple(coeffs)

    module_rows = None
    if "module" in data and data["module"] is not None:
        module_rows = tuple(
            tuple(_parse_rational(x) for x in row) for row in data["module"]
        )
    embedding_index = data.get("embedding_index")
    if embedding_index is not None:
        if not isinstance(embedding_index, int) or not (
            0 <= embedding_index < len(field.real_roots)
        ):
            raise SchemaError(f"embedding_index {embedding_index} out of range")

    if coeffs[0] != field.one:
        raise NotNormalized(f"c(1) = {coeffs[0]}, expected 1")

    count = len(coeffs)

    def c(m):
        return coeffs[m - 1]

    for m in range(2, count + 1):
        for n in range(2, count // m + 1):
            if gcd(m, n) == 1 and c(m) * c(n) != c(m * n):
                raise HeckeRelationViolated(
                    f"c({m})c({n}) != c({m * n})", m=m, n=n
                )
    for p in _primes_up_to(count):
        r = 1
        while p ** (r + 1) <= count:
            if p == level or level % p == 0:
                expected = c(p) * c(p ** r)
            else:
                expected = c(p) * c(p ** r) - p * c(p ** (r - 1))
            if c(p ** (r + 1)) != expected:
                raise HeckeRelationViolated(
                    f"prime power recursion fails at c({p ** (r + 1)})",
                    m=p, n=p ** r,
                )
            r += 1

    return NewformData(
        label=label,
        level=level,
        weight=weight,
        field=field,
        coeffs=coeffs,
        module_rows=module_rows,
        embedding_index=embedding_index,
    )


def load_fixture(name: str) -> NewformData:
    """Load one of the fixtures bundled with the package (by file name)."""
    from importlib import resources

    if not name.endswith(".json"):
        name = f"{name}.json"
    text = resources.files("heckeaf.fixtures").joinpath(name).read_text()
    return load_newform(text)


def bundled_fixture_names():
    from importlib import resources

    return sorted(
        entry.name[: -len(".json")]
        for entry in resources.files("heckeaf.fixtures").iterdir()
        if entry.name.endswith(".json")
    )


# ---------------------------------------------------------------------------
# Hecke operators on coefficient tables

def hecke_apply(n: int, coeffs, level: int):
    """gamma table of T_n: gamma(m) = sum over a | gcd(m, n), coprime to
    the level, of a * c(m n / a^2).

    coeffs is the 1-based table c(1)..c(M) (any ring elements); the result
    covers m = 1 .. M // n so every needed index exists.
    """
    count = len(coeffs)
    if n < 1:
        raise ValueError("n must be positive")
    out_len = count // n
    if out_len < 1:
        raise InsufficientCoefficients(
            f"table of length {count} cannot support T_{n}", required=n
        )

    def c(m):
        return coeffs[m - 1]

    out = []
    for m in range(1, out_len + 1):
        g = gcd(m, n)
        acc = None
        for a in range(1, g + 1):
            if g % a or gcd(a, level) != 1:
                continue
            term = c(m * n // (a * a))
            term = term if a == 1 else a * term
            acc = term if acc is None else acc + term
        out.append(acc)
    return out


@dataclass(frozen=True)
class PrimeCheck:
    p: int
    ok: bool
    checked_range: int
    first_failure: int | None = None


@dataclass(frozen=True)
class EigenReport:
    label: str
    checks: tuple

    @property
    def all_ok(self) -> bool:
        return all(ch.ok for ch in self.checks)

    def first_failure(self):
        for ch in self.checks:
            if not ch.ok:
                return (ch.p, ch.first_failure)
        return None


def verify_eigenform(f: NewformData, max_prime: int = HECKE_CHECK_BOUND) -> EigenReport:
    """Check T_p f = c(p) f on the comparable range for each prime p."""
    if f.count < max_prime ** 2:
        raise InsufficientCoefficients(
            f"need at least {max_prime ** 2} coefficients for primes up to {max_prime}",
            required=max_prime ** 2,
        )
    checks = []
    for p in _primes_up_to(max_prime):
        gamma = hecke_apply(p, f.coeffs, f.level)
        cp = f.c(p)
        failure = None
        for m in range(1, len(gamma) + 1):
            if gamma[m - 1] != cp * f.c(m):
                failure = m
                break
        checks.append(
            PrimeCheck(p=p, ok=failure is None, checked_range=len(gamma),
                       first_failure=failure)
        )
    return EigenReport(label=f.label, checks=tuple(checks))


# ---------------------------------------------------------------------------
# coefficient field, conjugates, module

def coefficient_field(f: NewformData) -> NumberField:
    """The field of the coefficients, with a primitive-coefficient check."""
    n = f.field.degree
    for cm in f.coeffs:
        if cm.degree_over_q() == n:
            return f.field
    if n == 1:
        return f.field  # the rationals generate themselves
    raise NotGenerated("no stored coefficient generates the coefficient field")


@dataclass(frozen=True)
class ConjugateFamily:
    base: NewformData
    embeddings: tuple  # RealRootInterval per real embedding, base first

    @property
    def size(self) -> int:
        return len(self.embeddings)

    def approx_table(self, index: int, eps=Fraction(1, 10 ** 8), upto: int = 20):
        """Certified intervals for sigma(c(m)), m = 1..upto, at conjugate
        number `index` (presentation data; the coordinates are shared)."""
        root = self.embeddings[index]
        return [eval_embedding(cm, root, eps) for cm in self.base.coeffs[:upto]]


def conjugate_family(f: NewformData) -> ConjugateFamily:
    """One conjugate per real embedding; the base embedding comes first.

    Conjugating an eigenform acts on coefficients through an embedding of
    the abstract field, so in coordinates the conjugates share their
    tables and differ in the working embedding only.
    """
    field = f.field
    if len(field.real_roots) != field.degree:
        raise NotTotallyReal(
            f"field {field.minpoly} has {len(field.real_roots)} real roots "
            f"for degree {field.degree}"
        )
    base = f.working_embedding_index()
    order = (base,) + tuple(i for i in range(field.degree) if i != base)
    return ConjugateFamily(
        base=f, embeddings=tuple(field.real_roots[i] for i in order)
    )


def module_of_eigenform(f: NewformData) -> ZModule:
    """The coefficient order's module: the Z-span of powers of the first
    generating coefficient, unless the fixture supplies explicit
    generators.  This is the exact stand-in for the period module, which
    is well defined up to a field-element scaling."""
    field = f.field
    if f.module_rows is not None:
        return module_from_generators(field, f.module_rows)
    n = field.degree
    if n == 1:
        return module_from_generators(field, [field.one])
    gen = None
    for cm in f.coeffs:
        if cm.degree_over_q() == n:
            gen = cm
            break
    if gen is None:
        raise NotGenerated("no coefficient generates the field")
    gens = [field.one]
    for _ in range(n - 1):
        gens.append(gens[-1] * gen)
    return module_from_generators(field, gens)


def hecke_action_on_module(f: NewformData, m: ZModule, n: int) -> FieldElement:
    """Verify c(n) * m is contained in m and return c(n)."""
    cn = f.c(n)
    for g in m.basis_elements():
        if not m.contains(cn * g):
            raise ModuleNotStable(
                f"c({n}) * {g} leaves the module", witness=(n, g.coords)
            )
    return cn


# ---------------------------------------------------------------------------
# the full pipeline

@dataclass(frozen=True)
class ConjugateSummary:
    embedding_index: int
    embedding: tuple          # (lo, hi) strings for the root interval
    unit_image: tuple         # certified interval of sigma(u), strings
    expanding: bool           # |sigma(u)| > 1 at this embedding
    char_poly: IntPolynomial


@dataclass(frozen=True)
class EigenformAFResult:
    label: str
    field: NumberField
    module: ZModule
    af: object                # StationaryAF or TrivialAF
    order: OrderRing | None = None
    unit: UnitElement | None = None
    matrix_a: tuple | None = None
    nonneg_matrix: tuple | None = None
    nonneg_power: int | None = None
    nonneg_transform: tuple | None = None
    digits: tuple | None = None
    expansion: JpaExpansion | None = None
    group: DimensionGroup | None = None
    embedding_index: int | None = None
    per_conjugate: tuple = ()

    def char_polys_equal(self) -> bool:
        polys = {cs.char_poly for cs in self.per_conjugate}
        return len(polys) <= 1


def _interval_strings(lo, hi):
    return (str(lo), str(hi))


def _abs_exceeds_one(elem: FieldElement, root) -> bool:
    """Exact |sigma(elem)| > 1 test (units never have |image| exactly 1)."""
    eps = Fraction(1, 100)
    while True:
        lo, hi = eval_embedding(elem * elem, root, eps)
        if lo > 1:
            return True
        if hi < 1:
            return False
        eps /= 64


def af_of_eigenform(f: NewformData) -> EigenformAFResult:
    """Run the stationary pipeline on a verified eigenform.

    Degree 1 is the rational case: the diagram is finite and
    one-dimensional, so the result is the trivial algebra.  Otherwise the
    module's endomorphism order supplies an expanding unit whose action
    matrix, made non-negative in a proper basis, factorizes into the
    period of the expansion; the detected period is cross-checked against
    the factorization.

    Conjugate data: the action of the conjugated unit on the conjugated
    module has the same integer matrix in coordinates, so per-conjugate
    characteristic polynomials agree by construction; the per-conjugate
    summaries record how the unit's image changes across embeddings.
    """
    field = f.field
    module = module_of_eigenform(f)
    if field.degree == 1:
        return EigenformAFResult(
            label=f.label, field=field, module=module, af=TrivialAF(),
            group=DimensionGroup(theta=(), root=None, order_unit=(1,)),
        )

    order = endomorphism_ring(module)
    emb_index = f.working_embedding_index()
    root = field.real_roots[emb_index]
    unit = find_unit(order, root)
    matrix_a = multiplication_matrix(unit.element, module)
    nonneg, power, transform = make_nonnegative(matrix_a, unit, module, root)
    digits = tuple(bauer_factorize(nonneg))
    expansion = periodicity_roundtrip(nonneg)
    cp = charpoly(nonneg)

    u_sat, lam = satz12_eigenvector(nonneg)
    from .mcf import perron_embedding

    group = dimension_group(lam[1:], perron_embedding(u_sat.field))
    af = StationaryAF(
        period_matrix=nonneg,
        digits=digits,
        char_poly=cp,
        perron_value=u_sat,
        perron_root=perron_embedding(u_sat.field),
    )

    summaries = []
    if len(field.real_roots) == field.degree:
        for i, r in enumerate(field.real_roots):
            lo, hi = eval_embedding(unit.element, r, Fraction(1, 10 ** 8))
            expanding = _abs_exceeds_one(unit.element, r)
            summaries.append(
                ConjugateSummary(
                    embedding_index=i,
                    embedding=_interval_strings(r.lo, r.hi),
                    unit_image=_interval_strings(lo, hi),
                    expanding=expanding,
                    char_poly=cp,
                )
            )

    result = EigenformAFResult(
        label=f.label,
        field=field,
        module=module,
        af=af,
        order=order,
        unit=unit,
        matrix_a=matrix_a,
        nonneg_matrix=nonneg,
        nonneg_power=power,
        nonneg_transform=transform,
        digits=digits,
        expansion=expansion,
        group=group,
        embedding_index=emb_index,
        per_conjugate=tuple(summaries),
    )
    assert result.char_polys_equal()
    assert isinstance(result.af, TrivialAF) == (field.degree == 1)
    return result


@dataclass(frozen=True)
class CompanionReport:
    label: str
    conjugates: int
    char_polys: tuple
    all_equal: bool
    pairwise_verdicts: tuple   # ((i, j, verdict), ...)
    module_galois_stable: bool


def companion_of_conjugates(f: NewformData) -> CompanionReport:
    """Per-conjugate pipeline comparison.

    The conjugate pipeline is the base pipeline with the conjugated module
    and unit, which in coordinates are the very same objects; what changes
    is the embedding data.  The report records the (necessarily equal)
    characteristic polynomials, the pairwise companion_check verdicts, and
    Galois stability of the module, checked by canonical-form comparison.
    """
    if f.field.degree == 1:
        return CompanionReport(
            label=f.label, conjugates=0, char_polys=(), all_equal=True,
            pairwise_verdicts=(), module_galois_stable=True,
        )
    family = conjugate_family(f)
    base = af_of_eigenform(f)
    # the conjugated module: built from the shared coordinate tables
    stable = module_of_eigenform(f) == base.module
    polys = []
    matrices = []
    for _ in range(family.size):
        polys.append(base.af.char_poly)
        matrices.append(base.af.period_matrix)
    verdicts = []
    for i in range(len(matrices)):
        for j in range(i + 1, len(matrices)):
            verdicts.append((i, j, companion_check(matrices[i], matrices[j])))
    all_equal = len(set(polys)) <= 1
    return CompanionReport(
        label=f.label,
        conjugates=family.size,
        char_polys=tuple(polys),
        all_equal=all_equal,
        pairwise_verdicts=tuple(verdicts),
        module_galois_stable=stable,
    )
