//! Exact rationals and univariate rational functions in `s` of the shape
//! `sum_t c_t / prod_j (N_j s + nu_j)`.
//!
//! Everything here is exact. A [`ZetaExpression`] keeps the raw term list as
//! produced by a formula; [`ZetaExpression::normalize`] brings it into a
//! canonical reduced fraction ([`NormalForm`]) so that two expressions are
//! equal as rational functions iff their normal forms compare equal.

mod poly;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use poly::UniPoly;

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Parses `"p/q"` or `"p"` (optional sign, surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim().replace('\u{2212}', "-");
    let parsed = match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
            let q: BigInt = q.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Rational::new(p, q)
        }
        None => Rational::from_integer(t.parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?),
    };
    Ok(parsed)
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod serde_rational {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rational(&raw).map_err(serde::de::Error::custom)
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
            match r {
                Some(r) => s.serialize_some(&r.to_string()),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rational>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|raw| parse_rational(&raw).map_err(serde::de::Error::custom))
                .transpose()
        }
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&r.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
            Vec::<String>::deserialize(d)?
                .iter()
                .map(|raw| parse_rational(raw).map_err(serde::de::Error::custom))
                .collect()
        }
    }
}

/// The linear form `N*s + nu` attached to a divisor or a cone ray.
///
/// `(N, nu)` is kept as given (no gcd is divided out), since the pair is
/// meaningful numerical data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[i64; 2]", try_from = "[i64; 2]")]
pub struct LinearFactor {
    n: i64,
    nu: i64,
}

impl LinearFactor {
    pub fn new(n: i64, nu: i64) -> Result<Self> {
        if n < 0 {
            return Err(Error::InvalidInput(format!("negative N in factor ({n},{nu})")));
        }
        if n == 0 && nu == 0 {
            return Err(Error::InvalidInput("factor 0*s + 0".into()));
        }
        Ok(LinearFactor { n, nu })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn nu(&self) -> i64 {
        self.nu
    }

    pub fn is_constant(&self) -> bool {
        self.n == 0
    }

    pub fn eval(&self, s: &Rational) -> Rational {
        s * int(self.n) + int(self.nu)
    }

    /// `-nu/N`, or `None` for constant factors.
    pub fn root(&self) -> Option<Rational> {
        (self.n != 0).then(|| rat(-self.nu, self.n))
    }

    /// Splits `N s + nu = scale * (N' s + nu')` with `gcd(N', nu') = 1`.
    fn primitive(&self) -> (i64, LinearFactor) {
        let g = self.n.gcd(&self.nu);
        (g, LinearFactor { n: self.n / g, nu: self.nu / g })
    }

    fn as_poly(&self) -> UniPoly {
        UniPoly::linear(int(self.n), int(self.nu))
    }
}

impl From<LinearFactor> for [i64; 2] {
    fn from(f: LinearFactor) -> Self {
        [f.n, f.nu]
    }
}

impl TryFrom<[i64; 2]> for LinearFactor {
    type Error = Error;

    fn try_from(v: [i64; 2]) -> Result<Self> {
        LinearFactor::new(v[0], v[1])
    }
}

impl fmt::Display for LinearFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.n, self.nu) {
            (0, nu) => write!(f, "{nu}"),
            (1, 0) => write!(f, "s"),
            (n, 0) => write!(f, "{n}s"),
            (1, nu) if nu < 0 => write!(f, "s - {}", -nu),
            (1, nu) => write!(f, "s + {nu}"),
            (n, nu) if nu < 0 => write!(f, "{n}s - {}", -nu),
            (n, nu) => write!(f, "{n}s + {nu}"),
        }
    }
}

/// One summand `coef / prod(factors)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    #[serde(with = "serde_rational")]
    pub coef: Rational,
    pub factors: Vec<LinearFactor>,
}

impl Term {
    pub fn new(coef: Rational, factors: Vec<LinearFactor>) -> Self {
        Term { coef, factors }
    }

    /// Value at `s`, or `None` when `s` is a root of a factor.
    pub fn eval(&self, s: &Rational) -> Option<Rational> {
        let mut den = Rational::one();
        for f in &self.factors {
            den *= f.eval(s);
        }
        (!den.is_zero()).then(|| &self.coef / den)
    }
}

/// Unnormalized sum of [`Term`]s. Serializes as a JSON array of
/// `{"coef": "p/q", "factors": [[N, nu], ...]}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ZetaExpression {
    terms: Vec<Term>,
}

impl ZetaExpression {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        ZetaExpression { terms: vec![Term::new(c, Vec::new())] }
    }

    pub fn single(coef: Rational, factors: Vec<LinearFactor>) -> Self {
        ZetaExpression { terms: vec![Term::new(coef, factors)] }
    }

    pub fn from_terms(terms: Vec<Term>) -> Self {
        ZetaExpression { terms }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn push(&mut self, term: Term) {
        self.terms.push(term);
    }

    /// Multiplies every coefficient by `c`.
    pub fn scaled(mut self, c: &Rational) -> Self {
        for t in &mut self.terms {
            t.coef *= c;
        }
        self
    }

    /// Largest number of linear factors in any term.
    pub fn max_factor_count(&self) -> usize {
        self.terms.iter().map(|t| t.factors.len()).max().unwrap_or(0)
    }

    /// Raw term-by-term evaluation; `None` if `s` is a root of any factor.
    pub fn eval(&self, s: &Rational) -> Option<Rational> {
        self.terms.iter().try_fold(Rational::zero(), |acc, t| Some(acc + t.eval(s)?))
    }

    pub fn normalize(&self) -> NormalForm {
        NormalForm::from_expression(self)
    }

    pub fn poles(&self) -> PoleReport {
        self.normalize().poles()
    }

    pub fn laurent_coefficient(&self, s0: &Rational, k: i64) -> Rational {
        self.normalize().laurent_coefficient(s0, k)
    }
}

impl Add for ZetaExpression {
    type Output = ZetaExpression;

    fn add(mut self, rhs: ZetaExpression) -> ZetaExpression {
        self.terms.extend(rhs.terms);
        self
    }
}

impl AddAssign for ZetaExpression {
    fn add_assign(&mut self, rhs: ZetaExpression) {
        self.terms.extend(rhs.terms);
    }
}

impl std::iter::Sum for ZetaExpression {
    fn sum<I: Iterator<Item = ZetaExpression>>(iter: I) -> Self {
        iter.fold(ZetaExpression::zero(), Add::add)
    }
}

/// Reduced fraction `numerator(s) / (scale * prod_j p_j(s)^{e_j})`.
///
/// Canonical: every `p_j` is a primitive factor with `N > 0`, factors are
/// sorted and distinct, no `p_j` divides the numerator, `scale > 0` and
/// `gcd(content(numerator), scale) = 1`. The zero function has an empty
/// numerator, scale one and no factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalForm {
    numerator: Vec<BigInt>,
    scale: BigInt,
    factors: Vec<(LinearFactor, u32)>,
}

impl NormalForm {
    fn from_expression(z: &ZetaExpression) -> NormalForm {
        let mut terms: Vec<(Rational, BTreeMap<LinearFactor, u32>)> = Vec::new();
        for t in &z.terms {
            let (coef, mults) = split_factors(t.coef.clone(), &t.factors);
            if !coef.is_zero() {
                terms.push((coef, mults));
            }
        }

        let mut den: BTreeMap<LinearFactor, u32> = BTreeMap::new();
        for (_, mults) in &terms {
            for (p, &e) in mults {
                let slot = den.entry(*p).or_insert(0);
                *slot = (*slot).max(e);
            }
        }

        let mut num = UniPoly::zero();
        for (coef, mults) in &terms {
            let mut part = UniPoly::constant(coef.clone());
            for (p, &e) in &den {
                let missing = e - mults.get(p).copied().unwrap_or(0);
                part = part.mul(&p.as_poly().pow(missing));
            }
            num = num.add(&part);
        }
        NormalForm::finish(num, den)
    }

    /// Normal form of `num(s) / prod(factors)`.
    pub fn from_parts(num: &UniPoly, factors: &[LinearFactor]) -> NormalForm {
        let (coef, den) = split_factors(Rational::one(), factors);
        NormalForm::finish(num.scale(&coef), den)
    }

    /// Cancels common roots and fixes the integer scaling.
    fn finish(mut num: UniPoly, mut den: BTreeMap<LinearFactor, u32>) -> NormalForm {
        if num.is_zero() {
            return NormalForm::zero();
        }
        for (p, e) in den.iter_mut() {
            let root = p.root().expect("primitive factors are non-constant");
            while *e > 0 && num.eval(&root).is_zero() {
                let (q, r) = num.div_rem(&p.as_poly());
                debug_assert!(r.is_zero());
                num = q;
                *e -= 1;
            }
        }

        let lcm = num.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> =
            num.coeffs().iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let factor = Rational::new(content.clone(), lcm);

        NormalForm {
            numerator: ints.iter().map(|c| c / &content * factor.numer()).collect(),
            scale: factor.denom().clone(),
            factors: den.into_iter().filter(|&(_, e)| e > 0).collect(),
        }
    }

    pub fn zero() -> NormalForm {
        NormalForm { numerator: Vec::new(), scale: BigInt::one(), factors: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// Integer numerator coefficients, constant term first.
    pub fn numerator(&self) -> &[BigInt] {
        &self.numerator
    }

    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    /// Primitive denominator factors with their multiplicities.
    pub fn factors(&self) -> &[(LinearFactor, u32)] {
        &self.factors
    }

    fn numerator_poly(&self) -> UniPoly {
        UniPoly::from_coeffs(self.numerator.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    fn denominator_at(&self, s: &Rational, skip: Option<&LinearFactor>) -> Rational {
        let mut d = Rational::from_integer(self.scale.clone());
        for (p, e) in &self.factors {
            if Some(p) != skip {
                d *= num_traits::pow(p.eval(s), *e as usize);
            }
        }
        d
    }

    pub fn eval(&self, s: &Rational) -> Option<Rational> {
        let d = self.denominator_at(s, None);
        (!d.is_zero()).then(|| self.numerator_poly().eval(s) / d)
    }

    fn factor_at(&self, s0: &Rational) -> Option<(LinearFactor, u32)> {
        self.factors.iter().find(|(p, _)| p.eval(s0).is_zero()).copied()
    }

    /// Pole order at `s0` (zero if `s0` is not a pole).
    pub fn order_at(&self, s0: &Rational) -> u32 {
        self.factor_at(s0).map_or(0, |(_, e)| e)
    }

    pub fn poles(&self) -> PoleReport {
        let num = self.numerator_poly();
        let mut entries: Vec<Pole> = self
            .factors
            .iter()
            .map(|(p, e)| {
                let s0 = p.root().unwrap();
                let lead =
                    num.eval(&s0) / (self.denominator_at(&s0, Some(p)) * num_traits::pow(int(p.n()), *e as usize));
                Pole { residue: (*e == 1).then(|| lead.clone()), location: s0, order: *e, leading_coefficient: lead }
            })
            .collect();
        entries.sort_by(|a, b| b.location.cmp(&a.location));
        PoleReport { entries }
    }

    /// Coefficient of `(s - s0)^(-k)` in the Laurent expansion at `s0`.
    pub fn laurent_coefficient(&self, s0: &Rational, k: i64) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let (pole, order) = match self.factor_at(s0) {
            Some((p, e)) => (Some(p), e as i64),
            None => (None, 0),
        };
        let idx = order - k;
        if idx < 0 {
            return Rational::zero();
        }
        let idx = idx as usize;
        // Z = (s - s0)^(-order) * H(s) and the answer is [t^idx] H(s0 + t).
        let mut series = truncate(self.numerator_poly().taylor_shift(s0).coeffs().to_vec(), idx);
        let mut inv_const = Rational::from_integer(self.scale.clone()).recip();
        if let Some(p) = &pole {
            inv_const /= num_traits::pow(int(p.n()), order as usize);
        }
        series = series.into_iter().map(|c| c * &inv_const).collect();
        for (p, e) in &self.factors {
            if Some(p) == pole.as_ref() {
                continue;
            }
            let a = p.eval(s0);
            let ratio = -int(p.n()) / &a;
            // 1/(a + N t) = (1/a) * sum (-N t / a)^i
            let mut inv = Vec::with_capacity(idx + 1);
            let mut c = a.recip();
            for _ in 0..=idx {
                inv.push(c.clone());
                c *= &ratio;
            }
            for _ in 0..*e {
                series = series_mul(&series, &inv, idx);
            }
        }
        series.get(idx).cloned().unwrap_or_else(Rational::zero)
    }
}

fn truncate(mut v: Vec<Rational>, idx: usize) -> Vec<Rational> {
    v.resize(idx + 1, Rational::zero());
    v
}

fn series_mul(a: &[Rational], b: &[Rational], idx: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); idx + 1];
    for (i, x) in a.iter().enumerate().take(idx + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(idx + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.numerator_poly();
        let nterms = self.numerator.iter().filter(|c| !c.is_zero()).count();
        if self.factors.is_empty() && self.scale.is_one() {
            return write!(f, "{num}");
        }
        if nterms > 1 {
            write!(f, "({num})/")?;
        } else {
            write!(f, "{num}/")?;
        }
        let mut parts: Vec<String> = Vec::new();
        if !self.scale.is_one() {
            parts.push(self.scale.to_string());
        }
        for (p, e) in &self.factors {
            if *e == 1 {
                parts.push(format!("({p})"));
            } else {
                parts.push(format!("({p})^{e}"));
            }
        }
        if parts.len() == 1 {
            write!(f, "{}", parts[0])
        } else {
            write!(f, "({})", parts.join(""))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct NormalFormRepr {
    numerator: Vec<String>,
    scale: String,
    factors: Vec<[i64; 3]>,
    text: String,
}

impl Serialize for NormalForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        NormalFormRepr {
            numerator: self.numerator.iter().map(ToString::to_string).collect(),
            scale: self.scale.to_string(),
            factors: self.factors.iter().map(|(p, e)| [p.n(), p.nu(), *e as i64]).collect(),
            text: self.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for NormalForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = NormalFormRepr::deserialize(d)?;
        let parse = |s: &str| s.parse::<BigInt>().map_err(|_| D::Error::custom(format!("bad integer {s:?}")));
        let scale = parse(&repr.scale)?;
        if scale.is_zero() {
            return Err(D::Error::custom("zero scale"));
        }
        let coeffs = repr
            .numerator
            .iter()
            .map(|s| Ok(Rational::new(parse(s)?, scale.clone())))
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        let mut factors = Vec::new();
        for &[n, nu, e] in &repr.factors {
            let f = LinearFactor::new(n, nu).map_err(D::Error::custom)?;
            factors.extend(std::iter::repeat_n(f, e.max(0) as usize));
        }
        Ok(NormalForm::from_parts(&UniPoly::from_coeffs(coeffs), &factors))
    }
}

/// Folds constant factors and factor contents into the coefficient and
/// counts the primitive non-constant factors.
fn split_factors(mut coef: Rational, factors: &[LinearFactor]) -> (Rational, BTreeMap<LinearFactor, u32>) {
    let mut mults = BTreeMap::new();
    for f in factors {
        if f.is_constant() {
            coef /= int(f.nu);
        } else {
            let (g, p) = f.primitive();
            coef /= int(g);
            *mults.entry(p).or_insert(0u32) += 1;
        }
    }
    (coef, mults)
}

/// One pole of a rational function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pole {
    #[serde(with = "serde_rational")]
    pub location: Rational,
    pub order: u32,
    /// Coefficient of `(s - location)^(-order)`.
    #[serde(with = "serde_rational")]
    pub leading_coefficient: Rational,
    /// Present only for simple poles.
    #[serde(with = "serde_rational::option", default)]
    pub residue: Option<Rational>,
}

/// Poles sorted from the largest location downwards.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PoleReport {
    pub entries: Vec<Pole>,
}

impl PoleReport {
    pub fn locations(&self) -> Vec<Rational> {
        self.entries.iter().map(|p| p.location.clone()).collect()
    }

    pub fn get(&self, s0: &Rational) -> Option<&Pole> {
        self.entries.iter().find(|p| &p.location == s0)
    }

    pub fn contains(&self, s0: &Rational) -> bool {
        self.get(s0).is_some()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }
}

#[allow(dead_code)]
fn assert_send_sync() {
    fn check<T: Send + Sync>() {}
    check::<ZetaExpression>();
    check::<NormalForm>();
    check::<PoleReport>();
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lf(n: i64, nu: i64) -> LinearFactor {
        LinearFactor::new(n, nu).unwrap()
    }

    fn expr(terms: &[(Rational, &[(i64, i64)])]) -> ZetaExpression {
        ZetaExpression::from_terms(
            terms.iter().map(|(c, fs)| Term::new(c.clone(), fs.iter().map(|&(n, nu)| lf(n, nu)).collect())).collect(),
        )
    }

    #[test]
    fn like_terms_merge() {
        let z = expr(&[(int(1), &[(2, 1)]), (int(1), &[(2, 1)])]);
        let nf = z.normalize();
        assert_eq!(nf, expr(&[(int(2), &[(2, 1)])]).normalize());
        assert_eq!(nf.numerator(), &[BigInt::from(2)]);
        assert_eq!(nf.factors(), &[(lf(2, 1), 1)]);
        assert_eq!(nf.to_string(), "2/(2s + 1)");
    }

    #[test]
    fn common_denominator() {
        // 1/((s+1)(2s+1)) + 1/(2s+1) = (s+2)/((s+1)(2s+1))
        let z = expr(&[(int(1), &[(1, 1), (2, 1)]), (int(1), &[(2, 1)])]);
        let nf = z.normalize();
        assert_eq!(nf.numerator(), &[BigInt::from(2), BigInt::from(1)]);
        assert_eq!(nf.factors(), &[(lf(1, 1), 1), (lf(2, 1), 1)]);
        assert_eq!(nf.to_string(), "(s + 2)/((s + 1)(2s + 1))");
    }

    #[test]
    fn principal_product_has_no_cancellation() {
        let nf = expr(&[(int(1), &[(2, 1), (3, 1)])]).normalize();
        assert_eq!(nf.numerator(), &[BigInt::from(1)]);
        assert_eq!(nf.factors().len(), 2);
    }

    #[test]
    fn non_primitive_factor_is_scaled() {
        // 1/(4s+2) = (1/2)/(2s+1)
        let nf = expr(&[(int(1), &[(4, 2)])]).normalize();
        assert_eq!(nf.scale(), &BigInt::from(2));
        assert_eq!(nf.factors(), &[(lf(2, 1), 1)]);
        // constant factors fold into the coefficient
        let c = expr(&[(int(3), &[(0, 6)])]).normalize();
        assert_eq!(c.numerator(), &[BigInt::from(1)]);
        assert_eq!(c.scale(), &BigInt::from(2));
        assert!(c.poles().is_empty());
    }

    #[test]
    fn cancellation_to_zero() {
        let z = expr(&[(int(1), &[(2, 1)]), (int(-1), &[(2, 1)])]);
        assert!(z.normalize().is_zero());
        assert!(z.poles().is_empty());
    }

    #[test]
    fn cancellation_lowers_order() {
        // 1/(s+1)^2 + 1/(s+1)... no cancel; but s/(s(s+1)) style:
        // 1/(s+1) - 1/(s+2) = 1/((s+1)(s+2)); and (1/(s+1)^2)*(s+1) via
        // 1/(s+1)^2 + s/(s+1)^2 written as 1/(s+1)^2 + [1/(s+1) - 1/(s+1)^2]
        let z = expr(&[(int(1), &[(1, 1), (1, 1)]), (int(1), &[(1, 1)]), (int(-1), &[(1, 1), (1, 1)])]);
        let nf = z.normalize();
        assert_eq!(nf.factors(), &[(lf(1, 1), 1)]);
        assert_eq!(nf.order_at(&int(-1)), 1);
    }

    #[test]
    fn poles_of_product() {
        // 1/((2s+1)(3s+1)): residue at -1/2 is 1/(2 * (3*(-1/2)+1)) = -1
        let report = expr(&[(int(1), &[(2, 1), (3, 1)])]).poles();
        assert_eq!(report.locations(), vec![rat(-1, 3), rat(-1, 2)]);
        let half = report.get(&rat(-1, 2)).unwrap();
        assert_eq!(half.order, 1);
        assert_eq!(half.residue, Some(int(-1)));
        let third = report.get(&rat(-1, 3)).unwrap();
        // 1/(3 * (2*(-1/3)+1)) = 1
        assert_eq!(third.residue, Some(int(1)));
    }

    #[test]
    fn laurent_coefficients() {
        let sq = expr(&[(int(1), &[(1, 1), (1, 1)])]);
        assert_eq!(sq.laurent_coefficient(&int(-1), 2), int(1));
        assert_eq!(sq.laurent_coefficient(&int(-1), 1), int(0));
        let two = expr(&[(int(1), &[(1, 1), (1, 2)])]);
        assert_eq!(two.laurent_coefficient(&int(-1), 1), int(1));
        let one = expr(&[(int(1), &[(1, 1)])]);
        assert_eq!(one.laurent_coefficient(&int(-2), 1), int(0));
        // regular point, k = 0 gives the value
        assert_eq!(one.laurent_coefficient(&int(1), 0), rat(1, 2));
    }

    #[test]
    fn laurent_subleading_term() {
        // 1/((s+1)^2 (s+2)) at -1: 1/(s+2) = 1 - t + ..., so the (s+1)^-1
        // coefficient is -1.
        let z = expr(&[(int(1), &[(1, 1), (1, 1), (1, 2)])]);
        assert_eq!(z.laurent_coefficient(&int(-1), 2), int(1));
        assert_eq!(z.laurent_coefficient(&int(-1), 1), int(-1));
        assert_eq!(z.laurent_coefficient(&int(-1), 0), int(1));
    }

    #[test]
    fn rational_strings() {
        assert_eq!(rat(-6, 13).to_string(), "-6/13");
        assert_eq!(int(3).to_string(), "3");
        assert_eq!(parse_rational(" -6/13 ").unwrap(), rat(-6, 13));
        assert_eq!(parse_rational("\u{2212}1").unwrap(), int(-1));
        assert!(matches!(parse_rational("1/0"), Err(Error::Parse(_))));
        assert!(matches!(parse_rational("abc"), Err(Error::Parse(_))));
    }

    #[test]
    fn json_shapes() {
        let z = expr(&[(rat(1, 2), &[(2, 1), (3, 1)])]);
        let json = serde_json::to_string(&z).unwrap();
        assert_eq!(json, r#"[{"coef":"1/2","factors":[[2,1],[3,1]]}]"#);
        let back: ZetaExpression = serde_json::from_str(&json).unwrap();
        assert_eq!(back, z);
        let nf = z.normalize();
        let nf_json = serde_json::to_string(&nf).unwrap();
        let nf_back: NormalForm = serde_json::from_str(&nf_json).unwrap();
        assert_eq!(nf_back, nf);
    }

    #[test]
    fn bad_factors_rejected() {
        assert!(LinearFactor::new(0, 0).is_err());
        assert!(LinearFactor::new(-1, 2).is_err());
        assert!(serde_json::from_str::<LinearFactor>("[0,0]").is_err());
    }
}
