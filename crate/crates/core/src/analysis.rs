//! Comparison of poles with Bernstein-Sato roots, and bounded searches over
//! families of volume forms.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{int, serde_rational, PoleReport, Rational};
use crate::bsp::{roots_for, RootSet, TwoMonomialIdeal};
use crate::error::{Error, Result};
use crate::lattice::{combinations, ExponentVector};
use crate::newton::{MonomialIdeal, Polynomial};
use crate::zeta::{zeta, NondegeneracyPolicy, Variant, ZetaRequest};

pub const DEFAULT_FAMILY_CAP: usize = 10_000;
pub const DEFAULT_DEGREE_BOUND: u32 = 20;
pub const FAMILY_CAP_ENV: &str = "TOPOZETA_FAMILY_CAP";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InclusionReport {
    pub holds: bool,
    pub poles: PoleReport,
    pub roots: RootSet,
    /// Poles that are not roots.
    #[serde(with = "serde_rational::vec")]
    pub witnesses: Vec<Rational>,
}

/// Whether every pole of the zeta function of `req` is a root of `b_I`.
pub fn check_inclusion(req: &ZetaRequest) -> Result<InclusionReport> {
    let roots = roots_for(&req.ideal)?;
    let poles = zeta(req)?.poles();
    let witnesses: Vec<Rational> = poles.locations().into_iter().filter(|p| !roots.contains(p)).collect();
    Ok(InclusionReport { holds: witnesses.is_empty(), poles, roots, witnesses })
}

/// A finite family of volume forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FamilySpec {
    /// All monic monomials of total degree at most `degree_bound`.
    Monomials {
        degree_bound: u32,
    },
    /// `x^2 + y^n` for `1 <= n <= degree_bound`.
    SquarePlusPower {
        degree_bound: u32,
    },
    /// `x^2 + x y^m + y^n` for `m >= 1` and `2m < n <= degree_bound`.
    SquareMixedPower {
        degree_bound: u32,
    },
    Explicit {
        forms: Vec<Polynomial>,
    },
}

fn monomials(dim: usize, bound: i64) -> Vec<ExponentVector> {
    // compositions of every total degree, by stars and bars
    let mut out = Vec::new();
    for total in 0..=bound {
        for bars in combinations(total as usize + dim - 1, dim - 1) {
            let mut e = Vec::with_capacity(dim);
            let mut prev = -1i64;
            for &b in &bars {
                e.push(b as i64 - prev - 1);
                prev = b as i64;
            }
            e.push(total + dim as i64 - 1 - prev - 1);
            out.push(ExponentVector::new(e));
        }
    }
    out
}

fn count_monomials(dim: usize, bound: u32) -> u128 {
    // C(bound + dim, dim)
    (1..=dim as u128).fold(1u128, |acc, i| acc * (bound as u128 + i) / i)
}

fn from_terms(terms: &[(i64, [i64; 2])]) -> Polynomial {
    Polynomial::new(2, terms.iter().map(|(c, e)| (int(*c), ExponentVector::from(*e))).collect()).unwrap()
}

impl FamilySpec {
    /// Number of forms without expanding.
    pub fn size(&self, dim: usize) -> u128 {
        match self {
            FamilySpec::Monomials { degree_bound } => count_monomials(dim, *degree_bound),
            FamilySpec::SquarePlusPower { degree_bound } => *degree_bound as u128,
            FamilySpec::SquareMixedPower { degree_bound } => {
                let b = *degree_bound as u128;
                (1..b).map(|m| b.saturating_sub(2 * m)).sum()
            }
            FamilySpec::Explicit { forms } => forms.len() as u128,
        }
    }

    /// The forms in `dim` variables, in a fixed order.
    pub fn expand(&self, dim: usize, cap: usize) -> Result<Vec<Polynomial>> {
        let size = self.size(dim);
        if size > cap as u128 {
            return Err(Error::FamilyTooLarge { size: size.min(usize::MAX as u128) as usize, cap });
        }
        let needs_plane = matches!(self, FamilySpec::SquarePlusPower { .. } | FamilySpec::SquareMixedPower { .. });
        if needs_plane && dim != 2 {
            return Err(Error::InvalidInput("this family lives in two variables".into()));
        }
        let forms = match self {
            FamilySpec::Monomials { degree_bound } => {
                monomials(dim, *degree_bound as i64).into_iter().map(Polynomial::monomial).collect()
            }
            FamilySpec::SquarePlusPower { degree_bound } => {
                (1..=*degree_bound as i64).map(|n| from_terms(&[(1, [2, 0]), (1, [0, n])])).collect()
            }
            FamilySpec::SquareMixedPower { degree_bound } => {
                let b = *degree_bound as i64;
                (1..b)
                    .flat_map(|m| (2 * m + 1..=b).map(move |n| from_terms(&[(1, [2, 0]), (1, [1, m]), (1, [0, n])])))
                    .collect()
            }
            FamilySpec::Explicit { forms } => {
                if let Some(f) = forms.iter().find(|f| f.dim() != dim) {
                    return Err(Error::DimensionMismatch { expected: dim, found: f.dim() });
                }
                forms.clone()
            }
        };
        Ok(forms)
    }
}

/// Monomials `x^i` (`i < a`), `x^k y^l` over the edge region and `y^j`
/// (`j < d`); each root of the ideal is a pole for one of them.
pub fn two_monomial_covering_family(ideal: &TwoMonomialIdeal) -> FamilySpec {
    if ideal.a == 0 && ideal.d > 0 {
        let FamilySpec::Explicit { forms } = two_monomial_covering_family(&ideal.swapped()) else { unreachable!() };
        let forms = forms
            .into_iter()
            .map(|f| {
                let e = &f.support()[0];
                Polynomial::monomial(ExponentVector::from([e[1], e[0]]))
            })
            .collect();
        return FamilySpec::Explicit { forms: dedup_sorted(forms) };
    }
    let mut exps: Vec<[i64; 2]> = (0..ideal.a).map(|i| [i, 0]).collect();
    exps.extend(ideal.edge_region_points().into_iter().map(|(k, l)| [k, l]));
    exps.extend((0..ideal.d).map(|j| [0, j]));
    let forms = exps.into_iter().map(|e| Polynomial::monomial(ExponentVector::from(e))).collect();
    FamilySpec::Explicit { forms: dedup_sorted(forms) }
}

fn dedup_sorted(mut forms: Vec<Polynomial>) -> Vec<Polynomial> {
    forms.sort();
    forms.dedup();
    forms
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FormReport {
    pub form: Polynomial,
    pub text: String,
    #[serde(with = "serde_rational::vec")]
    pub poles: Vec<Rational>,
    /// Poles that are not roots.
    #[serde(with = "serde_rational::vec")]
    pub bad_poles: Vec<Rational>,
    /// Set when the zeta function could not be computed for this form.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

impl FormReport {
    pub fn is_clean(&self) -> bool {
        self.error.is_none() && self.bad_poles.is_empty()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoverageReport {
    pub ideal: String,
    pub roots: RootSet,
    pub attained: RootSet,
    pub unattained: RootSet,
    pub family_size: usize,
    /// Always true: the report covers a finite family only.
    pub bounded: bool,
    pub scope: String,
    pub forms: Vec<FormReport>,
}

impl CoverageReport {
    fn assemble(ideal: String, roots: RootSet, mut forms: Vec<FormReport>) -> CoverageReport {
        forms.sort_by(|a, b| a.form.cmp(&b.form));
        forms.dedup_by(|a, b| a.form == b.form);
        let attained =
            RootSet::new(forms.iter().flat_map(|f| f.poles.iter()).filter(|p| roots.contains(p)).cloned()).unwrap();
        let unattained = RootSet::new(roots.roots().iter().filter(|r| !attained.contains(r)).cloned()).unwrap();
        let family_size = forms.len();
        CoverageReport {
            ideal,
            roots,
            attained,
            unattained,
            family_size,
            bounded: true,
            scope: format!("bounded search over {family_size} forms; says nothing about forms outside the family"),
            forms,
        }
    }

    pub fn bad_forms(&self) -> impl Iterator<Item = &FormReport> {
        self.forms.iter().filter(|f| !f.bad_poles.is_empty())
    }

    /// Report for the union of both families.
    pub fn merge(&self, other: &CoverageReport) -> Result<CoverageReport> {
        if self.ideal != other.ideal {
            return Err(Error::InvalidInput("reports for different ideals".into()));
        }
        let forms = self.forms.iter().chain(&other.forms).cloned().collect();
        Ok(CoverageReport::assemble(self.ideal.clone(), self.roots.clone(), forms))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub variant: Variant,
    pub policy: NondegeneracyPolicy,
    pub cap: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { variant: Variant::Local, policy: NondegeneracyPolicy::RequireProof, cap: DEFAULT_FAMILY_CAP }
    }
}

impl SearchOptions {
    /// Defaults, with the cap taken from `TOPOZETA_FAMILY_CAP` when set.
    pub fn from_env() -> Result<Self> {
        let mut opts = SearchOptions::default();
        if let Ok(v) = std::env::var(FAMILY_CAP_ENV) {
            opts.cap = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{FAMILY_CAP_ENV} must be a nonnegative integer, got '{v}'")))?;
        }
        Ok(opts)
    }
}

/// Poles of the zeta function for every form of the family, and which roots
/// they reach. Forms are evaluated in parallel; the report is sorted by form.
pub fn coverage_search(ideal: &MonomialIdeal, family: &FamilySpec, opts: &SearchOptions) -> Result<CoverageReport> {
    let roots = roots_for(ideal)?;
    let forms = family.expand(ideal.dim(), opts.cap)?;
    let reports: Vec<FormReport> = forms
        .into_par_iter()
        .map(|g| {
            let req = ZetaRequest { ideal: ideal.clone(), form: g.clone(), variant: opts.variant, policy: opts.policy };
            let text = g.to_string();
            match zeta(&req) {
                Ok(z) => {
                    let poles = z.poles().locations();
                    let bad_poles = poles.iter().filter(|p| !roots.contains(p)).cloned().collect();
                    FormReport { form: g, text, poles, bad_poles, error: None }
                }
                Err(e) => {
                    FormReport { form: g, text, poles: Vec::new(), bad_poles: Vec::new(), error: Some(e.to_string()) }
                }
            }
        })
        .collect();
    Ok(CoverageReport::assemble(ideal.to_string(), roots, reports))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn ideal(gens: &[[i64; 2]]) -> MonomialIdeal {
        MonomialIdeal::new(gens.iter().map(|g| ExponentVector::from(*g)).collect()).unwrap()
    }

    fn text(src: &str) -> Polynomial {
        crate::input::parse_polynomial(src, 2).unwrap()
    }

    #[test]
    fn bench_inclusions() {
        let i = ideal(&[[1, 1], [5, 0]]);
        let r = check_inclusion(&ZetaRequest::new(i.clone(), Polynomial::one(2))).unwrap();
        assert!(r.holds);
        let r = check_inclusion(&ZetaRequest::new(i.clone(), text("x+y^4"))).unwrap();
        assert!(r.holds);
        assert!(r.poles.contains(&rat(-6, 5)) && r.poles.contains(&rat(-9, 5)));
        let r = check_inclusion(&ZetaRequest::new(i, text("x^2+y^3"))).unwrap();
        assert!(!r.holds);
        assert!(r.witnesses.contains(&rat(-11, 5)));
    }

    #[test]
    fn monomial_enumeration() {
        let ms = monomials(2, 3);
        assert_eq!(ms.len(), 10);
        assert_eq!(ms.len() as u128, count_monomials(2, 3));
        assert_eq!(monomials(1, 3).len(), 4);
        let ms3 = monomials(3, 4);
        assert_eq!(ms3.len() as u128, count_monomials(3, 4));
        let mut sorted = ms3.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ms3.len());
        assert!(ms3.iter().all(|m| m.is_nonnegative() && m.total() <= 4));
        for spec in [FamilySpec::SquarePlusPower { degree_bound: 7 }, FamilySpec::SquareMixedPower { degree_bound: 9 }]
        {
            assert_eq!(spec.expand(2, 100).unwrap().len() as u128, spec.size(2));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let fam = FamilySpec::Monomials { degree_bound: 20 };
        let opts = SearchOptions { cap: 100, ..SearchOptions::default() };
        let err = coverage_search(&ideal(&[[1, 1], [5, 0]]), &fam, &opts).unwrap_err();
        assert!(matches!(err, Error::FamilyTooLarge { size: 231, cap: 100 }));
    }

    #[test]
    fn principal_family_attains_everything() {
        let i = ideal(&[[2, 3]]);
        let fam = FamilySpec::Explicit { forms: ["1", "x", "y", "y^2"].iter().map(|s| text(s)).collect() };
        let report = coverage_search(&i, &fam, &SearchOptions::default()).unwrap();
        assert!(report.unattained.is_empty());
        assert_eq!(report.attained.len(), 4);
        assert_eq!(report.bad_forms().count(), 0);
    }

    #[test]
    fn covering_family_for_bench_ideal() {
        let t = TwoMonomialIdeal::new(1, 1, 5, 0).unwrap();
        let FamilySpec::Explicit { forms } = two_monomial_covering_family(&t) else { panic!() };
        let expected: Vec<Polynomial> = (0..5).map(|k| Polynomial::monomial(ExponentVector::from([k, 0]))).collect();
        assert_eq!(forms, expected);
        let report =
            coverage_search(&t.to_ideal(), &FamilySpec::Explicit { forms }, &SearchOptions::default()).unwrap();
        assert!(report.unattained.is_empty());
    }

    #[test]
    fn merge_is_order_independent() {
        let i = ideal(&[[1, 1], [5, 0]]);
        let a = FamilySpec::Explicit { forms: vec![text("1"), text("x+y^4")] };
        let b = FamilySpec::Explicit { forms: vec![text("x^2+y^3"), text("x")] };
        let c = FamilySpec::Explicit { forms: vec![text("y")] };
        let opts = SearchOptions::default();
        let (ra, rb, rc) = (
            coverage_search(&i, &a, &opts).unwrap(),
            coverage_search(&i, &b, &opts).unwrap(),
            coverage_search(&i, &c, &opts).unwrap(),
        );
        let left = ra.merge(&rb).unwrap().merge(&rc).unwrap();
        let right = rc.merge(&rb.merge(&ra).unwrap()).unwrap();
        assert_eq!(serde_json::to_string(&left).unwrap(), serde_json::to_string(&right).unwrap());
        assert_eq!(left.family_size, 5);
        assert!(left.attained.contains(&rat(-6, 5)));
    }

    #[test]
    fn degenerate_members_are_reported() {
        let i = ideal(&[[1, 1], [5, 0]]);
        let fam = FamilySpec::Explicit { forms: vec![text("x^2+2x y+y^2")] };
        let report = coverage_search(&i, &fam, &SearchOptions::default()).unwrap();
        assert!(report.forms[0].error.is_some());
        assert!(!report.forms[0].is_clean());
    }
}
