//! Newton polyhedra of monomial ideals and polynomials, their faces and
//! normal fans, and the common refinement used by the cone formula.
//!
//! Local polyhedra (`conv(A) + R^n_{>=0}`) are handled in ambient dimension
//! up to [`MAX_DIM`]. A face of a local polyhedron is `conv(V) + cone(e_j :
//! j in free)`, where `V` is the set of vertices minimizing some `k >= 0`
//! and `free` is the set of coordinates with `k_j = 0`; two faces are equal
//! iff these data agree. Global polytopes `conv(supp g)` are supported for
//! `n <= 2` only.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{int, Rational, UniPoly};
use crate::error::{Error, Result};
use crate::lattice::{self, primitive, rank, Cone, ExponentVector, MAX_DIM};

fn check_dim(expected: usize, v: &ExponentVector) -> Result<()> {
    if v.dim() != expected {
        return Err(Error::DimensionMismatch { expected, found: v.dim() });
    }
    Ok(())
}

/// Keeps the elements of `points` not divisible by another one; sorted and
/// deduplicated.
fn minimalize(points: &[ExponentVector]) -> Vec<ExponentVector> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    let mut out: Vec<ExponentVector> =
        pts.iter().filter(|p| !pts.iter().any(|q| q != *p && q.divides(p))).cloned().collect();
    out.sort();
    out
}

/// A monomial ideal given by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<ExponentVector>", into = "Vec<ExponentVector>")]
pub struct MonomialIdeal {
    dim: usize,
    generators: Vec<ExponentVector>,
}

impl MonomialIdeal {
    /// Builds the ideal generated by `x^w` for `w` in `generators`. The unit
    /// ideal is rejected: the origin must lie in the zero locus.
    pub fn new(generators: Vec<ExponentVector>) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::InvalidInput("an ideal needs at least one generator".into()));
        };
        let dim = first.dim();
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::Unsupported(format!("ideals in {dim} variables")));
        }
        for g in &generators {
            check_dim(dim, g)?;
            if !g.is_nonnegative() {
                return Err(Error::InvalidInput(format!("negative exponent in {g}")));
            }
            if g.is_zero() {
                return Err(Error::InvalidInput("the unit ideal is not allowed".into()));
            }
        }
        Ok(MonomialIdeal { dim, generators: minimalize(&generators) })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    pub fn is_principal(&self) -> bool {
        self.generators.len() == 1
    }

    /// Exponent of the largest monomial dividing every generator.
    pub fn common_factor(&self) -> ExponentVector {
        ExponentVector::new((0..self.dim).map(|i| self.generators.iter().map(|g| g[i]).min().unwrap()).collect())
    }
}

impl TryFrom<Vec<ExponentVector>> for MonomialIdeal {
    type Error = Error;

    fn try_from(v: Vec<ExponentVector>) -> Result<Self> {
        MonomialIdeal::new(v)
    }
}

impl From<MonomialIdeal> for Vec<ExponentVector> {
    fn from(i: MonomialIdeal) -> Self {
        i.generators
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(monomial_string).collect();
        write!(f, "({})", gens.join(","))
    }
}

const VARS: [&str; 4] = ["x", "y", "z", "w"];

fn monomial_string(e: &ExponentVector) -> String {
    let mut s = String::new();
    for (i, &a) in e.iter().enumerate() {
        match a {
            0 => {}
            1 => s.push_str(VARS[i]),
            _ => s.push_str(&format!("{}^{a}", VARS[i])),
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

/// A polynomial with rational coefficients, `g = sum a_w x^w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl Polynomial {
    /// Like terms are combined; zero coefficients are dropped.
    pub fn new(dim: usize, terms: Vec<(Rational, ExponentVector)>) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::Unsupported(format!("polynomials in {dim} variables")));
        }
        let mut map: BTreeMap<ExponentVector, Rational> = BTreeMap::new();
        for (c, e) in terms {
            check_dim(dim, &e)?;
            if !e.is_nonnegative() {
                return Err(Error::InvalidInput(format!("negative exponent in {e}")));
            }
            *map.entry(e).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Polynomial { dim, terms: map })
    }

    pub fn monomial(exponent: ExponentVector) -> Self {
        let dim = exponent.dim();
        Polynomial { dim, terms: BTreeMap::from([(exponent, Rational::one())]) }
    }

    pub fn one(dim: usize) -> Self {
        Self::monomial(ExponentVector::zeros(dim))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<ExponentVector> {
        self.terms.keys().cloned().collect()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// `g(0)`.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&ExponentVector::zeros(self.dim))
    }

    /// `min { k . w : w in supp g }`.
    pub fn order_along(&self, k: &ExponentVector) -> i64 {
        self.terms.keys().map(|w| k.dot(w)).min().unwrap_or(0)
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter().map(|(e, c)| (c.to_string(), e)))
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let value = serde_json::Value::deserialize(d)?;
        let terms = crate::input::json_terms(&value).map_err(D::Error::custom)?;
        let dim = terms.first().map(|(_, e)| e.dim()).ok_or_else(|| D::Error::custom("empty polynomial"))?;
        Polynomial::new(dim, terms).map_err(D::Error::custom)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mono = monomial_string(e);
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (mag.is_one(), mono.as_str()) {
                (true, m) => write!(f, "{m}")?,
                (false, "1") => write!(f, "{mag}")?,
                (false, m) if mag.is_integer() => write!(f, "{mag}*{m}")?,
                (false, m) => write!(f, "({mag})*{m}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolyhedronKind {
    IdealLocal,
    PolyLocal,
    PolyGlobal,
}

/// Supporting hyperplane `normal . x = offset` with `normal . x >= offset`
/// on the polyhedron.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Facet {
    pub normal: ExponentVector,
    pub offset: i64,
}

/// A face of a Newton polyhedron.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Face {
    dim: usize,
    vertices: Vec<ExponentVector>,
    free_coords: Vec<usize>,
    active: Vec<Facet>,
}

impl PartialEq for Face {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.free_coords == other.free_coords
    }
}

impl Eq for Face {}

impl Face {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[ExponentVector] {
        &self.vertices
    }

    /// Coordinates `j` such that `e_j` is a recession direction of the face.
    pub fn free_coords(&self) -> &[usize] {
        &self.free_coords
    }

    /// Facets containing this face.
    pub fn active_facets(&self) -> &[Facet] {
        &self.active
    }

    pub fn is_compact(&self) -> bool {
        self.free_coords.is_empty()
    }

    /// Membership for points of the polyhedron.
    pub fn contains(&self, p: &ExponentVector) -> bool {
        self.active.iter().all(|f| f.normal.dot(p) == f.offset)
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices.iter().map(ToString::to_string).collect();
        write!(f, "conv{{{}}}", vs.join(","))?;
        if !self.free_coords.is_empty() {
            let es: Vec<String> = self.free_coords.iter().map(|j| format!("e{}", j + 1)).collect();
            write!(f, "+cone{{{}}}", es.join(","))?;
        }
        Ok(())
    }
}

fn affine_dim(points: &[ExponentVector], directions: &[ExponentVector]) -> usize {
    let Some(p0) = points.first() else { return 0 };
    let mut vs: Vec<ExponentVector> = points.iter().skip(1).map(|p| p.sub(p0)).collect();
    vs.extend(directions.iter().cloned());
    if vs.is_empty() {
        0
    } else {
        rank(&vs)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NewtonPolyhedron {
    kind: PolyhedronKind,
    dim: usize,
    vertices: Vec<ExponentVector>,
    facets: Vec<Facet>,
    faces: Vec<Face>,
}

impl NewtonPolyhedron {
    fn local(kind: PolyhedronKind, dim: usize, points: &[ExponentVector]) -> Result<Self> {
        let gens = minimalize(points);
        let mut vertices = Vec::new();
        let mut normals: Vec<ExponentVector> = Vec::new();
        for v in &gens {
            let diffs: Vec<ExponentVector> = gens.iter().filter(|w| *w != v).map(|w| w.sub(v)).collect();
            let cone = lattice::extreme_rays(dim, &diffs)?;
            if cone.dim() == dim {
                vertices.push(v.clone());
                for r in cone.generators() {
                    if !normals.contains(r) {
                        normals.push(r.clone());
                    }
                }
            }
        }
        normals.sort_by(|a, b| b.cmp(a));
        let facets = normals
            .into_iter()
            .map(|k| {
                let offset = vertices.iter().map(|v| k.dot(v)).min().unwrap();
                Facet { normal: k, offset }
            })
            .collect();
        let mut p = NewtonPolyhedron { kind, dim, vertices, facets, faces: Vec::new() };
        p.faces = p.enumerate_faces();
        Ok(p)
    }

    fn enumerate_faces(&self) -> Vec<Face> {
        let mut faces = vec![self.local_face(&ExponentVector::zeros(self.dim))];
        let mut i = 0;
        while i < faces.len() {
            let k_sigma = faces[i].active.iter().fold(ExponentVector::zeros(self.dim), |acc, f| acc.add(&f.normal));
            for facet in &self.facets {
                let face = self.local_face(&k_sigma.add(&facet.normal));
                if !faces.contains(&face) {
                    faces.push(face);
                }
            }
            i += 1;
        }
        faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.vertices.cmp(&b.vertices)));
        faces
    }

    fn local_face(&self, k: &ExponentVector) -> Face {
        let m = self.vertices.iter().map(|v| k.dot(v)).min().unwrap();
        let vertices: Vec<ExponentVector> = self.vertices.iter().filter(|v| k.dot(v) == m).cloned().collect();
        let free_coords: Vec<usize> = (0..self.dim).filter(|&j| k[j] == 0).collect();
        let active = self
            .facets
            .iter()
            .filter(|f| {
                vertices.iter().all(|v| f.normal.dot(v) == f.offset) && free_coords.iter().all(|&j| f.normal[j] == 0)
            })
            .cloned()
            .collect();
        let dirs: Vec<ExponentVector> = free_coords.iter().map(|&j| ExponentVector::unit(self.dim, j)).collect();
        Face { dim: affine_dim(&vertices, &dirs), vertices, free_coords, active }
    }

    /// `Gamma(I) = conv{w : x^w in I}`.
    pub fn of_ideal(ideal: &MonomialIdeal) -> Result<Self> {
        Self::local(PolyhedronKind::IdealLocal, ideal.dim(), ideal.generators())
    }

    /// `Gamma_g = conv(supp g) + R^n_{>=0}`.
    pub fn local_of(g: &Polynomial) -> Result<Self> {
        if g.is_zero() {
            return Err(Error::InvalidInput("the zero polynomial has no Newton polyhedron".into()));
        }
        Self::local(PolyhedronKind::PolyLocal, g.dim(), &g.support())
    }

    /// `Gamma^gl_g = conv(supp g)`, for `n <= 2`.
    pub fn global_of(g: &Polynomial) -> Result<Self> {
        if g.is_zero() {
            return Err(Error::InvalidInput("the zero polynomial has no Newton polyhedron".into()));
        }
        match g.dim() {
            1 => Ok(global_1d(&g.support())),
            2 => Ok(global_2d(&g.support())),
            n => Err(Error::Unsupported(format!("global Newton polytopes in {n} variables"))),
        }
    }

    pub fn kind(&self) -> PolyhedronKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[ExponentVector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn compact_faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(|f| f.is_compact())
    }

    /// `m(k)` and the first meet locus `F(k)`.
    pub fn meet_data(&self, k: &ExponentVector) -> Result<(i64, Face)> {
        check_dim(self.dim, k)?;
        let m = self.vertices.iter().map(|v| k.dot(v)).min().unwrap();
        match self.kind {
            PolyhedronKind::PolyGlobal => {
                let face = self
                    .faces
                    .iter()
                    .find(|f| {
                        f.vertices.iter().all(|v| k.dot(v) == m)
                            && self.vertices.iter().filter(|v| k.dot(v) == m).count() == f.vertices.len()
                    })
                    .cloned()
                    .expect("every minimizing vertex set is a face");
                Ok((m, face))
            }
            _ => {
                if !k.is_nonnegative() {
                    return Err(Error::InvalidInput(format!("{k} is not in the positive orthant")));
                }
                Ok((m, self.local_face(k)))
            }
        }
    }

    /// One cone per face: the cone of `tau` is strictly positively spanned by
    /// the normals of the facets containing `tau`.
    pub fn normal_fan(&self) -> Result<Vec<(Face, Cone)>> {
        if self.kind == PolyhedronKind::PolyGlobal {
            return Err(Error::Unsupported("normal fans of global polytopes".into()));
        }
        self.faces
            .iter()
            .map(|f| {
                let cone = Cone::new(self.dim, f.active.iter().map(|a| a.normal.clone()).collect())?;
                Ok((f.clone(), cone))
            })
            .collect()
    }
}

fn global_face(vertices: Vec<ExponentVector>, active: Vec<Facet>) -> Face {
    let mut vertices = vertices;
    vertices.sort();
    Face { dim: affine_dim(&vertices, &[]), vertices, free_coords: Vec::new(), active }
}

fn global_1d(points: &[ExponentVector]) -> NewtonPolyhedron {
    let lo = points.iter().min().unwrap().clone();
    let hi = points.iter().max().unwrap().clone();
    let left = Facet { normal: ExponentVector::new(vec![1]), offset: lo[0] };
    let right = Facet { normal: ExponentVector::new(vec![-1]), offset: -hi[0] };
    let mut faces = vec![global_face(vec![lo.clone()], vec![left.clone()])];
    let (vertices, facets) = if lo == hi {
        (vec![lo], Vec::new())
    } else {
        faces.push(global_face(vec![hi.clone()], vec![right.clone()]));
        faces.push(global_face(vec![lo.clone(), hi.clone()], Vec::new()));
        (vec![lo, hi], vec![left, right])
    };
    if facets.is_empty() {
        faces[0].active.clear();
    }
    NewtonPolyhedron { kind: PolyhedronKind::PolyGlobal, dim: 1, vertices, facets, faces }
}

fn cross(o: &ExponentVector, a: &ExponentVector, b: &ExponentVector) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Counter-clockwise hull vertices without collinear points.
fn hull_2d(points: &[ExponentVector]) -> Vec<ExponentVector> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<ExponentVector> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<ExponentVector> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn global_2d(points: &[ExponentVector]) -> NewtonPolyhedron {
    let hull = hull_2d(points);
    if affine_dim(&hull, &[]) < 2 {
        // point or segment inside the plane
        let mut ends = hull.clone();
        ends.sort();
        let lo = ends.first().unwrap().clone();
        let hi = ends.last().unwrap().clone();
        if lo == hi {
            let face = global_face(vec![lo.clone()], Vec::new());
            return NewtonPolyhedron {
                kind: PolyhedronKind::PolyGlobal,
                dim: 2,
                vertices: vec![lo],
                facets: Vec::new(),
                faces: vec![face],
            };
        }
        let d = hi.sub(&lo);
        let dir = primitive(d.as_slice()).unwrap();
        let f_lo = Facet { normal: dir.clone(), offset: dir.dot(&lo) };
        let neg = ExponentVector::new(dir.iter().map(|x| -x).collect());
        let f_hi = Facet { normal: neg.clone(), offset: neg.dot(&hi) };
        let faces = vec![
            global_face(vec![lo.clone()], vec![f_lo.clone()]),
            global_face(vec![hi.clone()], vec![f_hi.clone()]),
            global_face(vec![lo.clone(), hi.clone()], Vec::new()),
        ];
        return NewtonPolyhedron {
            kind: PolyhedronKind::PolyGlobal,
            dim: 2,
            vertices: vec![lo, hi],
            facets: vec![f_lo, f_hi],
            faces,
        };
    }
    let n = hull.len();
    let facets: Vec<Facet> = (0..n)
        .map(|i| {
            let (p, q) = (&hull[i], &hull[(i + 1) % n]);
            let d = q.sub(p);
            let normal = primitive(&[-d[1], d[0]]).unwrap();
            let offset = normal.dot(p);
            Facet { normal, offset }
        })
        .collect();
    let mut faces = Vec::new();
    for i in 0..n {
        let prev = &facets[(i + n - 1) % n];
        faces.push(global_face(vec![hull[i].clone()], vec![prev.clone(), facets[i].clone()]));
    }
    for i in 0..n {
        faces.push(global_face(vec![hull[i].clone(), hull[(i + 1) % n].clone()], vec![facets[i].clone()]));
    }
    faces.push(global_face(hull.clone(), Vec::new()));
    let mut vertices = hull;
    vertices.sort();
    NewtonPolyhedron { kind: PolyhedronKind::PolyGlobal, dim: 2, vertices, facets, faces }
}

/// A cell `delta = Delta_I(tau) ∩ Delta_g(tau_delta)` of the common
/// refinement.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PartitionCell {
    pub cone: Cone,
    pub ideal_face: Face,
    pub g_face: Face,
}

impl PartitionCell {
    pub fn dim(&self) -> usize {
        self.cone.dim()
    }

    /// `dim Delta_g(tau_delta) = n - dim tau_delta`.
    pub fn g_cone_dim(&self) -> usize {
        self.cone.ambient_dim() - self.g_face.dim()
    }
}

/// Angular order in the closed positive quadrant, from `(1,0)` to `(0,1)`.
fn angle_cmp(a: &ExponentVector, b: &ExponentVector) -> std::cmp::Ordering {
    let c = a[0] * b[1] - a[1] * b[0];
    0.cmp(&c)
}

fn single_vertex(p: &NewtonPolyhedron) -> bool {
    p.vertices.len() == 1
}

/// Common refinement of the normal fans of two local polyhedra. Fully
/// supported for `n <= 2`; for larger `n` one of the two polyhedra must be a
/// translated orthant (a single vertex), whose fan every other fan refines.
pub fn refine(ideal: &NewtonPolyhedron, g: &NewtonPolyhedron) -> Result<Vec<PartitionCell>> {
    if ideal.dim != g.dim {
        return Err(Error::DimensionMismatch { expected: ideal.dim, found: g.dim });
    }
    if ideal.kind == PolyhedronKind::PolyGlobal || g.kind == PolyhedronKind::PolyGlobal {
        return Err(Error::Unsupported("refinement of global polytope fans".into()));
    }
    let n = ideal.dim;
    let cones: Vec<Cone> = if n <= 2 {
        let mut rays: Vec<ExponentVector> =
            ideal.facets.iter().chain(g.facets.iter()).map(|f| f.normal.clone()).collect();
        if n == 2 {
            rays.sort_by(angle_cmp);
        }
        rays.dedup();
        let mut cones = vec![Cone::zero(n)];
        for r in &rays {
            cones.push(Cone::new(n, vec![r.clone()])?);
        }
        for w in rays.windows(2) {
            cones.push(Cone::new(n, vec![w[0].clone(), w[1].clone()])?);
        }
        cones
    } else if single_vertex(g) {
        ideal.normal_fan()?.into_iter().map(|(_, c)| c).collect()
    } else if single_vertex(ideal) {
        g.normal_fan()?.into_iter().map(|(_, c)| c).collect()
    } else {
        return Err(Error::Unsupported(format!("refinement of two non-trivial fans in dimension {n}")));
    };
    cones
        .into_iter()
        .map(|cone| {
            let k = cone.interior_point();
            let (_, ideal_face) = ideal.meet_data(&k)?;
            let (_, g_face) = g.meet_data(&k)?;
            Ok(PartitionCell { cone, ideal_face, g_face })
        })
        .collect()
}

/// `Vol(tau)`: the `dim tau`-dimensional lattice volume of
/// `conv(supp g ∩ tau)`, normalized so that a fundamental parallelepiped of
/// the lattice in the affine hull has volume one. Vertices have volume one.
/// When `supp g ∩ tau` spans less than `dim tau` (possible for unbounded
/// faces) the volume is zero.
pub fn face_volume(face: &Face, support: &[ExponentVector]) -> Result<Rational> {
    if face.dim == 0 {
        return Ok(Rational::one());
    }
    let pts: Vec<ExponentVector> = support.iter().filter(|p| face.contains(p)).cloned().collect();
    if affine_dim(&pts, &[]) < face.dim {
        return Ok(Rational::zero());
    }
    match face.dim {
        1 => {
            let (_, params) = line_params(&pts);
            let lo = params.iter().min().unwrap();
            let hi = params.iter().max().unwrap();
            Ok(int(hi - lo))
        }
        2 if pts[0].dim() == 2 => {
            let hull = hull_2d(&pts);
            let twice: i64 = (0..hull.len())
                .map(|i| {
                    let (p, q) = (&hull[i], &hull[(i + 1) % hull.len()]);
                    p[0] * q[1] - p[1] * q[0]
                })
                .sum();
            Ok(Rational::new(twice.abs().into(), 2.into()))
        }
        d => Err(Error::Unsupported(format!("volumes of {d}-dimensional faces in dimension {}", pts[0].dim()))),
    }
}

/// For collinear points: the primitive direction and each point's integer
/// coordinate along it, measured from the first point.
fn line_params(pts: &[ExponentVector]) -> (ExponentVector, Vec<i64>) {
    let p0 = &pts[0];
    let far = pts.iter().find(|p| *p != p0).expect("at least two distinct points");
    let dir = primitive(far.sub(p0).as_slice()).unwrap();
    let c = (0..dir.dim()).find(|&i| dir[i] != 0).unwrap();
    let params = pts.iter().map(|p| (p[c] - p0[c]) / dir[c]).collect();
    (dir, params)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    /// Compact faces of the local Newton polyhedron.
    LocalCompact,
    /// All faces of the global Newton polytope.
    Global,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Proved,
    /// Faces of dimension two or more could not be checked.
    Assumed {
        faces: Vec<String>,
    },
    Refuted {
        face: String,
    },
}

/// Torus-smoothness of `g_tau` on every face in `scope`. Exact for faces of
/// dimension at most one; higher-dimensional faces are reported as assumed.
pub fn nondegenerate(g: &Polynomial, scope: Scope) -> Result<Verdict> {
    let poly = match scope {
        Scope::LocalCompact => NewtonPolyhedron::local_of(g)?,
        Scope::Global => NewtonPolyhedron::global_of(g)?,
    };
    let faces: Vec<&Face> = match scope {
        Scope::LocalCompact => poly.compact_faces().collect(),
        Scope::Global => poly.faces().iter().collect(),
    };
    let support = g.support();
    let mut assumed = Vec::new();
    for face in faces {
        match face.dim {
            0 => {}
            1 => {
                if !edge_is_smooth(g, face, &support) {
                    return Ok(Verdict::Refuted { face: face.to_string() });
                }
            }
            _ => assumed.push(face.to_string()),
        }
    }
    Ok(if assumed.is_empty() { Verdict::Proved } else { Verdict::Assumed { faces: assumed } })
}

/// On an edge, `g_tau = x^p * h(x^u)` with `u` primitive and `h(0) != 0`;
/// singular points in the torus are exactly multiple roots of `h`.
fn edge_is_smooth(g: &Polynomial, face: &Face, support: &[ExponentVector]) -> bool {
    let pts: Vec<ExponentVector> = support.iter().filter(|p| face.contains(p)).cloned().collect();
    if affine_dim(&pts, &[]) == 0 {
        return true;
    }
    let (_, params) = line_params(&pts);
    let lo = *params.iter().min().unwrap();
    let hi = *params.iter().max().unwrap();
    let mut coeffs = vec![Rational::zero(); (hi - lo + 1) as usize];
    for (p, t) in pts.iter().zip(&params) {
        coeffs[(t - lo) as usize] = g.coefficient(p);
    }
    let h = UniPoly::from_coeffs(coeffs);
    h.gcd(&h.derivative()).degree() == Some(0)
}
