//! Topological zeta functions from the normal-fan cone formula.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{int, LinearFactor, Rational, ZetaExpression};
use crate::error::{Error, Result};
use crate::lattice::{mult, simplicial_decomposition, Cone, ExponentVector};
use crate::newton::{face_volume, nondegenerate, refine, MonomialIdeal, NewtonPolyhedron, Polynomial, Scope, Verdict};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// Germ at the origin.
    #[default]
    Local,
    /// Whole affine space.
    Global,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NondegeneracyPolicy {
    #[default]
    RequireProof,
    AllowAssumed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaRequest {
    pub ideal: MonomialIdeal,
    /// `g`, with `g dx` the volume form.
    pub form: Polynomial,
    pub variant: Variant,
    pub policy: NondegeneracyPolicy,
}

impl ZetaRequest {
    pub fn new(ideal: MonomialIdeal, form: Polynomial) -> Self {
        ZetaRequest { ideal, form, variant: Variant::Local, policy: NondegeneracyPolicy::RequireProof }
    }

    pub fn variant(mut self, variant: Variant) -> Self {
        self.variant = variant;
        self
    }

    pub fn policy(mut self, policy: NondegeneracyPolicy) -> Self {
        self.policy = policy;
        self
    }
}

fn m_ideal(ideal: &MonomialIdeal, k: &ExponentVector) -> i64 {
    ideal.generators().iter().map(|w| k.dot(w)).min().unwrap()
}

fn simplicial_j(ideal: &MonomialIdeal, g: &Polynomial, gens: &[ExponentVector]) -> Result<ZetaExpression> {
    let mut coef = int(mult(gens)? as i64);
    let mut factors = Vec::with_capacity(gens.len());
    for k in gens {
        let n = m_ideal(ideal, k);
        let nu = g.order_along(k) + k.total();
        if n == 0 {
            coef /= int(nu);
        } else {
            factors.push(LinearFactor::new(n, nu)?);
        }
    }
    Ok(ZetaExpression::single(coef, factors))
}

/// `J(s) = mult(k_1..k_r) / prod (m_I(k_j) s + m_g(k_j) + sigma(k_j))` for a
/// simplicial cone; non-simplicial cones are summed over the full-dimensional
/// pieces of a triangulation without new rays. The zero cone gives `1`.
pub fn j_function(ideal: &MonomialIdeal, g: &Polynomial, cone: &Cone) -> Result<ZetaExpression> {
    if cone.ambient_dim() != ideal.dim() {
        return Err(Error::DimensionMismatch { expected: ideal.dim(), found: cone.ambient_dim() });
    }
    if g.is_zero() {
        return Err(Error::InvalidInput("the volume form must be nonzero".into()));
    }
    if cone.is_zero() {
        return Ok(ZetaExpression::constant(Rational::one()));
    }
    if cone.is_simplicial() {
        return simplicial_j(ideal, g, cone.generators());
    }
    j_over_pieces(ideal, g, &simplicial_decomposition(cone), cone.dim())
}

/// Sums `J` over the `dim`-dimensional members of an explicit triangulation.
pub fn j_over_pieces(ideal: &MonomialIdeal, g: &Polynomial, pieces: &[Cone], dim: usize) -> Result<ZetaExpression> {
    pieces.iter().filter(|p| p.dim() == dim).map(|p| simplicial_j(ideal, g, p.generators())).sum()
}

fn check_policy(verdict: Verdict, policy: NondegeneracyPolicy) -> Result<()> {
    match verdict {
        Verdict::Proved => Ok(()),
        Verdict::Refuted { face } => Err(Error::Degenerate(face)),
        Verdict::Assumed { faces } => match policy {
            NondegeneracyPolicy::AllowAssumed => Ok(()),
            NondegeneracyPolicy::RequireProof => Err(Error::NondegeneracyUnproved(faces.join(", "))),
        },
    }
}

fn factorial(n: usize) -> Rational {
    (1..=n as i64).map(int).product()
}

/// The topological zeta function of `req.ideal` with respect to `g dx`.
pub fn zeta(req: &ZetaRequest) -> Result<ZetaExpression> {
    let (ideal, g) = (&req.ideal, &req.form);
    let n = ideal.dim();
    if g.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: g.dim() });
    }
    if g.is_zero() {
        return Err(Error::InvalidInput("the volume form must be nonzero".into()));
    }
    let gamma_i = NewtonPolyhedron::of_ideal(ideal)?;
    if g.is_monomial() {
        let cones: Vec<Cone> = gamma_i.normal_fan()?.into_iter().map(|(_, c)| c).filter(|c| c.dim() == n).collect();
        return sum_parallel(cones.par_iter().map(|c| j_function(ideal, g, c)).collect());
    }
    if n > 2 {
        return Err(Error::Unsupported(format!("non-monomial volume forms in {n} variables")));
    }
    let scope = match req.variant {
        Variant::Local => {
            if !g.constant_term().is_zero() {
                return Err(Error::InvalidInput("the local variant needs g(0) = 0 for a non-monomial g".into()));
            }
            Scope::LocalCompact
        }
        Variant::Global => Scope::Global,
    };
    check_policy(nondegenerate(g, scope)?, req.policy)?;
    let gamma_g = NewtonPolyhedron::local_of(g)?;
    let support = g.support();
    let cells = refine(&gamma_i, &gamma_g)?;
    let half = Rational::new(1.into(), 2.into());
    let parts: Vec<Result<ZetaExpression>> = cells
        .par_iter()
        .map(|cell| {
            if req.variant == Variant::Local && cell.cone.in_coordinate_hyperplane() {
                return Ok(ZetaExpression::zero());
            }
            let dim = cell.dim();
            if dim == n {
                return j_function(ideal, g, &cell.cone);
            }
            if dim != cell.g_cone_dim() {
                return Ok(ZetaExpression::zero());
            }
            let codim = n - dim;
            let vol = face_volume(&cell.g_face, &support)?;
            if vol.is_zero() {
                return Ok(ZetaExpression::zero());
            }
            let sign = if codim % 2 == 0 { int(1) } else { int(-1) };
            let weight = &half * sign * factorial(codim) * vol;
            Ok(j_function(ideal, g, &cell.cone)?.scaled(&weight))
        })
        .collect();
    sum_parallel(parts)
}

fn sum_parallel(parts: Vec<Result<ZetaExpression>>) -> Result<ZetaExpression> {
    parts.into_iter().sum()
}
