//! Root sets of Bernstein-Sato polynomials in the closed-form cases, plus
//! two tabulated ideals.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{parse_rational, rat, Rational};
use crate::error::{Error, Result};
use crate::lattice::ExponentVector;
use crate::newton::MonomialIdeal;

/// A finite set of negative rationals, kept in descending order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RootSet {
    roots: Vec<Rational>,
}

impl RootSet {
    pub fn new(roots: impl IntoIterator<Item = Rational>) -> Result<Self> {
        let mut roots: Vec<Rational> = roots.into_iter().collect();
        if let Some(r) = roots.iter().find(|r| **r >= Rational::zero()) {
            return Err(Error::InvalidInput(format!("root {r} is not negative")));
        }
        roots.sort_by(|a, b| b.cmp(a));
        roots.dedup();
        Ok(RootSet { roots })
    }

    pub fn roots(&self) -> &[Rational] {
        &self.roots
    }

    pub fn contains(&self, r: &Rational) -> bool {
        self.roots.binary_search_by(|x| r.cmp(x)).is_ok()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn union(&self, other: &RootSet) -> RootSet {
        RootSet::new(self.roots.iter().chain(&other.roots).cloned()).unwrap()
    }
}

impl Serialize for RootSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.roots.iter().map(ToString::to_string))
    }
}

impl<'de> Deserialize<'de> for RootSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        let roots =
            raw.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>().map_err(serde::de::Error::custom)?;
        RootSet::new(roots).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for RootSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.roots.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

/// Roots for the principal ideal `(x^w)`: `-j/w_i` for `1 <= j <= w_i`.
pub fn principal_roots(w: &ExponentVector) -> Result<RootSet> {
    if w.is_zero() {
        return Err(Error::ZeroVector);
    }
    if !w.is_nonnegative() {
        return Err(Error::InvalidInput(format!("negative exponent in {w}")));
    }
    RootSet::new(w.iter().filter(|&&wi| wi > 0).flat_map(|&wi| (1..=wi).map(move |j| rat(-j, wi))))
}

/// The ideal `(x^a y^b, x^c y^d)` with `a < c` and `b > d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwoMonomialIdeal {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl TwoMonomialIdeal {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if a < 0 || d < 0 {
            return Err(Error::InvalidInput("exponents must be nonnegative".into()));
        }
        if a >= c || b <= d {
            return Err(Error::InvalidInput(format!("need a < c and b > d, got ({a},{b},{c},{d})")));
        }
        Ok(TwoMonomialIdeal { a, b, c, d })
    }

    /// Recognizes a two-generator ideal in two variables.
    pub fn from_ideal(ideal: &MonomialIdeal) -> Option<Self> {
        match ideal.generators() {
            [p, q] if ideal.dim() == 2 => {
                let (p, q) = if p[0] < q[0] { (p, q) } else { (q, p) };
                TwoMonomialIdeal::new(p[0], p[1], q[0], q[1]).ok()
            }
            _ => None,
        }
    }

    pub fn to_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(vec![ExponentVector::new(vec![self.a, self.b]), ExponentVector::new(vec![self.c, self.d])])
            .expect("two nonzero generators")
    }

    /// The same ideal with the variables exchanged.
    pub fn swapped(&self) -> Self {
        TwoMonomialIdeal { a: self.d, b: self.c, c: self.b, d: self.a }
    }

    /// `bc - ad`.
    pub fn det(&self) -> i64 {
        self.b * self.c - self.a * self.d
    }

    /// `phi(x, y) = ((b-d) x + (c-a) y) / (bc - ad)`, equal to one on the
    /// compact edge.
    pub fn phi(&self, x: i64, y: i64) -> Rational {
        rat((self.b - self.d) * x + (self.c - self.a) * y, self.det())
    }

    /// Lattice points of the region attached to the compact edge, for
    /// `a > 0` or `a = d = 0`.
    pub fn edge_region_points(&self) -> Vec<(i64, i64)> {
        let TwoMonomialIdeal { a, b, c, d } = *self;
        assert!(a > 0 || d == 0, "the region needs a > 0 or a = d = 0");
        let mut pts = Vec::new();
        for x in 0..c {
            for y in 0..b {
                let inside = if a == 0 { true } else { a * y >= d * (x + a - c) && a * y < d * x + a * (b - d) };
                if inside {
                    pts.push((x, y));
                }
            }
        }
        pts
    }
}

/// Roots for `(x^a y^b, x^c y^d)`: `-(i+1)/a`, `-phi(k+1,l+1)` over the
/// edge region, and `-(j+1)/d`. When `a = 0 < d` the roots are computed for
/// the ideal with the variables exchanged.
pub fn two_monomial_roots(ideal: &TwoMonomialIdeal) -> RootSet {
    if ideal.a == 0 && ideal.d > 0 {
        return two_monomial_roots(&ideal.swapped());
    }
    let TwoMonomialIdeal { a, d, .. } = *ideal;
    let outer_a = (0..a).map(|i| rat(-(i + 1), a));
    let edge = ideal.edge_region_points().into_iter().map(|(k, l)| -ideal.phi(k + 1, l + 1));
    let outer_d = (0..d).map(|j| rat(-(j + 1), d));
    RootSet::new(outer_a.chain(edge).chain(outer_d)).unwrap()
}

const FIXTURE_THREE: &str = "(xy^5,x^3y^2,x^4y)";
const FIXTURE_BENCH: &str = "(xy,x^5)";

fn fixture_names() -> [(&'static str, &'static str, Vec<[i64; 2]>); 2] {
    [(FIXTURE_THREE, "(xy⁵,x³y²,x⁴y)", vec![[1, 5], [3, 2], [4, 1]]), (FIXTURE_BENCH, "(xy,x⁵)", vec![[1, 1], [5, 0]])]
}

/// Tabulated root sets: `(xy^5,x^3y^2,x^4y)` and `(xy,x^5)`. Superscript
/// digits are accepted in names.
pub fn fixture_roots(name: &str) -> Result<RootSet> {
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    let key = fixture_names()
        .into_iter()
        .find(|(ascii, pretty, _)| compact == *ascii || compact == *pretty)
        .map(|(ascii, _, _)| ascii)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))?;
    Ok(match key {
        FIXTURE_THREE => RootSet::new((5..=17).map(|i| rat(-i, 13)).chain((2..=6).map(|j| rat(-j, 5)))).unwrap(),
        _ => RootSet::new((5..=9).map(|i| rat(-i, 5))).unwrap(),
    })
}

/// The tabulated root set whose ideal has exactly these generators.
pub fn fixture_for_ideal(ideal: &MonomialIdeal) -> Option<RootSet> {
    fixture_names().into_iter().find_map(|(name, _, gens)| {
        let gens: Vec<ExponentVector> = gens.into_iter().map(ExponentVector::from).collect();
        let fixture = MonomialIdeal::new(gens).unwrap();
        (fixture == *ideal).then(|| fixture_roots(name).unwrap())
    })
}

/// Roots for any ideal with a known formula or table entry.
pub fn roots_for(ideal: &MonomialIdeal) -> Result<RootSet> {
    if ideal.is_principal() {
        return principal_roots(&ideal.generators()[0]);
    }
    if let Some(two) = TwoMonomialIdeal::from_ideal(ideal) {
        return Ok(two_monomial_roots(&two));
    }
    fixture_for_ideal(ideal).ok_or_else(|| Error::NoRootFormula(ideal.to_string()))
}
