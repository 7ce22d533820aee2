//! Plumbing graphs, their intersection forms, and singularity links.
//!
//! A plumbing graph is a finite connected graph with an integer weight
//! and a genus attached to each vertex; edges may carry multiplicities.
//! The associated intersection form has the weights on the diagonal and
//! edge multiplicities off it. For negative-definite forms the module
//! computes Laufer's fundamental cycle by the classical sequence, the
//! arithmetic genus of any effective cycle, and the resulting rational /
//! minimally elliptic classification.
//!
//! Seifert rational homology spheres with negative fiber degree arise as
//! links of star plumbings: one central vertex carrying the background
//! Euler number with one chain per cone point whose weights come from
//! the negated continued fraction expansion of `alpha / beta`. Both
//! directions of that dictionary live here, together with a verifier for
//! the two twist families of exceptional sphere configurations.

use std::fmt;

use num::{BigInt, Integer, One, Signed, Zero};
use thiserror::Error;

use crate::orbifold::{OrbLineBundle, OrbifoldSurface};
use crate::seifert::{SeifertError, SeifertManifold};
use crate::Rat;

/// Errors from plumbing construction and analysis.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlumbingError {
    #[error("plumbing graph needs at least one vertex")]
    Empty,
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("self loops are not allowed, got one at vertex {0}")]
    SelfLoop(usize),
    #[error("edge multiplicity must be positive")]
    ZeroMultiplicity,
    #[error("plumbing graph is not connected")]
    NotConnected,
    #[error("intersection form is not negative definite")]
    NotNegativeDefinite,
    #[error("continued fraction expansion needs 0 < beta < alpha, got {beta}/{alpha}")]
    FractionOutOfRange { alpha: u64, beta: u64 },
    #[error("continued fraction expansion needs gcd(alpha, beta) = 1, got {beta}/{alpha}")]
    FractionNotCoprime { alpha: u64, beta: u64 },
    #[error("star plumbing needs a genus-zero base, got genus {0}")]
    GenusUnsupported(u32),
    #[error("star plumbing needs negative fiber degree, got {0}")]
    FiberDegreeNotNegative(Rat),
    #[error("weight does not fit in a machine integer")]
    WeightOverflow,
    #[error("graph is not a star plumbing: {reason}")]
    NotStar { reason: String },
    #[error("chain plumbings have no distinguished center, pass Seifert data instead")]
    AmbiguousChain,
    #[error("{family} twist family needs {requirement}, got p = {p}, s = {s}")]
    FamilyParameter {
        family: &'static str,
        requirement: &'static str,
        p: u64,
        s: u64,
    },
    #[error("family parameters overflow machine integers")]
    ParameterOverflow,
    #[error("no leg assignment matches the reference intersection form: {details}")]
    EmbeddingMismatch { details: String },
    #[error(transparent)]
    Seifert(#[from] SeifertError),
}

/// A weighted graph describing a plumbed four-manifold boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlumbingGraph {
    weights: Vec<i64>,
    genera: Vec<u32>,
    neighbors: Vec<Vec<(usize, u64)>>,
}

impl PlumbingGraph {
    /// Graph from vertex weights, genera and weighted edges.
    ///
    /// Parallel `(i, j)` entries accumulate their multiplicities. The
    /// graph must be nonempty and connected, with no self loops.
    pub fn new(
        weights: Vec<i64>,
        genera: Vec<u32>,
        edges: &[(usize, usize, u64)],
    ) -> Result<Self, PlumbingError> {
        let n = weights.len();
        if n == 0 {
            return Err(PlumbingError::Empty);
        }
        assert_eq!(genera.len(), n, "one genus per vertex");
        let mut neighbors: Vec<Vec<(usize, u64)>> = vec![Vec::new(); n];
        for &(i, j, mult) in edges {
            if i >= n {
                return Err(PlumbingError::VertexOutOfRange(i));
            }
            if j >= n {
                return Err(PlumbingError::VertexOutOfRange(j));
            }
            if i == j {
                return Err(PlumbingError::SelfLoop(i));
            }
            if mult == 0 {
                return Err(PlumbingError::ZeroMultiplicity);
            }
            for (a, b) in [(i, j), (j, i)] {
                match neighbors[a].iter_mut().find(|(v, _)| *v == b) {
                    Some((_, m)) => *m += mult,
                    None => neighbors[a].push((b, mult)),
                }
            }
        }
        for row in &mut neighbors {
            row.sort_unstable();
        }
        let graph = PlumbingGraph {
            weights,
            genera,
            neighbors,
        };
        if !graph.is_connected() {
            return Err(PlumbingError::NotConnected);
        }
        Ok(graph)
    }

    /// Genus-zero graph with simple edges.
    pub fn from_weights(weights: Vec<i64>, edges: &[(usize, usize)]) -> Result<Self, PlumbingError> {
        let genera = vec![0; weights.len()];
        let weighted: Vec<(usize, usize, u64)> = edges.iter().map(|&(i, j)| (i, j, 1)).collect();
        Self::new(weights, genera, &weighted)
    }

    pub fn vertex_count(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn genera(&self) -> &[u32] {
        &self.genera
    }

    /// Edges as `(i, j, multiplicity)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize, u64)> {
        let mut out = Vec::new();
        for (i, row) in self.neighbors.iter().enumerate() {
            for &(j, mult) in row {
                if i < j {
                    out.push((i, j, mult));
                }
            }
        }
        out
    }

    fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(w, _) in &self.neighbors[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// The symmetric intersection matrix: weights on the diagonal, edge
    /// multiplicities off it.
    pub fn intersection_matrix(&self) -> Vec<Vec<BigInt>> {
        let n = self.vertex_count();
        let mut m = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            m[i][i] = BigInt::from(self.weights[i]);
            for &(j, mult) in &self.neighbors[i] {
                m[i][j] = BigInt::from(mult);
            }
        }
        m
    }

    /// Determinant of the intersection form, by fraction-free
    /// elimination with row pivoting.
    pub fn det(&self) -> BigInt {
        let n = self.vertex_count();
        let mut m = self.intersection_matrix();
        let mut prev = BigInt::one();
        let mut negate = false;
        for k in 0..n {
            if m[k][k].is_zero() {
                let Some(l) = (k + 1..n).find(|&l| !m[l][k].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap(k, l);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let val = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                    m[i][j] = val;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        if negate {
            -prev
        } else {
            prev
        }
    }

    /// Sylvester test on the leading principal minors, which fraction
    /// free elimination produces as its successive pivots.
    pub fn is_negative_definite(&self) -> bool {
        let n = self.vertex_count();
        let mut m = self.intersection_matrix();
        let mut prev = BigInt::one();
        for k in 0..n {
            let minor_is_negative = k % 2 == 0;
            if m[k][k].is_zero() || m[k][k].is_negative() != minor_is_negative {
                return false;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let val = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                    m[i][j] = val;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        true
    }

    /// Intersection number of the cycle with the `i`-th vertex class.
    fn pairing_with_vertex(&self, z: &[u64], i: usize) -> BigInt {
        let mut acc = BigInt::from(self.weights[i]) * BigInt::from(z[i]);
        for &(j, mult) in &self.neighbors[i] {
            acc += BigInt::from(mult) * BigInt::from(z[j]);
        }
        acc
    }

    /// Laufer's fundamental cycle, computed from vertex 0.
    pub fn fundamental_cycle(&self) -> Result<Cycle, PlumbingError> {
        self.fundamental_cycle_from(0)
    }

    /// Laufer's computation sequence seeded at `start`: repeatedly bump
    /// the lowest-index vertex whose pairing with the cycle is positive.
    /// The result is independent of the seed; termination needs a
    /// negative-definite form, which is checked first.
    pub fn fundamental_cycle_from(&self, start: usize) -> Result<Cycle, PlumbingError> {
        if start >= self.vertex_count() {
            return Err(PlumbingError::VertexOutOfRange(start));
        }
        if !self.is_negative_definite() {
            return Err(PlumbingError::NotNegativeDefinite);
        }
        let n = self.vertex_count();
        let mut z = vec![0u64; n];
        z[start] = 1;
        'outer: loop {
            for i in 0..n {
                if self.pairing_with_vertex(&z, i).is_positive() {
                    z[i] += 1;
                    continue 'outer;
                }
            }
            return Ok(Cycle { coeffs: z });
        }
    }

    /// Arithmetic genus `(Z^2 + Z.K) / 2 + 1` of an effective cycle,
    /// with `K.E_i = -E_i^2 - 2 + 2 g_i` from adjunction.
    ///
    /// Panics when the cycle length does not match the vertex count.
    pub fn arithmetic_genus(&self, z: &Cycle) -> BigInt {
        let n = self.vertex_count();
        assert_eq!(z.coefficients().len(), n, "one coefficient per vertex");
        let mut z_sq = BigInt::zero();
        let mut z_k = BigInt::zero();
        for i in 0..n {
            let zi = BigInt::from(z.coeffs[i]);
            z_sq += &zi * self.pairing_with_vertex(&z.coeffs, i);
            let k_e = -BigInt::from(self.weights[i]) - 2 + 2 * BigInt::from(self.genera[i]);
            z_k += zi * k_e;
        }
        let twice = z_sq + z_k;
        debug_assert!(twice.is_even(), "Z^2 + Z.K is always even");
        twice / 2 + 1
    }

    /// Classification of the singularity the graph resolves.
    ///
    /// Rational means the fundamental cycle has arithmetic genus zero;
    /// minimally elliptic means genus one with every proper connected
    /// induced subgraph rational. The subgraph sweep is exponential in
    /// the vertex count, which is fine for the small graphs these links
    /// produce.
    pub fn classify(&self) -> Result<Classification, PlumbingError> {
        let z = self.fundamental_cycle()?;
        let pa = self.arithmetic_genus(&z);
        if pa.is_zero() {
            return Ok(Classification::Rational);
        }
        if !pa.is_one() {
            return Ok(Classification::Other);
        }
        let n = self.vertex_count();
        assert!(n < 64, "subgraph sweep uses 64-bit masks");
        let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
        for mask in 1..full {
            if !self.mask_is_connected(mask) {
                continue;
            }
            let sub = self.induced_subgraph(mask);
            let z = sub
                .fundamental_cycle()
                .expect("subforms of negative definite forms are negative definite");
            if !sub.arithmetic_genus(&z).is_zero() {
                return Ok(Classification::Other);
            }
        }
        Ok(Classification::MinimallyElliptic)
    }

    fn mask_is_connected(&self, mask: u64) -> bool {
        let first = mask.trailing_zeros() as usize;
        let mut seen = 1u64 << first;
        let mut stack = vec![first];
        while let Some(v) = stack.pop() {
            for &(w, _) in &self.neighbors[v] {
                let bit = 1u64 << w;
                if mask & bit != 0 && seen & bit == 0 {
                    seen |= bit;
                    stack.push(w);
                }
            }
        }
        seen == mask
    }

    fn induced_subgraph(&self, mask: u64) -> PlumbingGraph {
        let keep: Vec<usize> = (0..self.vertex_count())
            .filter(|&v| mask & (1 << v) != 0)
            .collect();
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (new, &old) in keep.iter().enumerate() {
            index[old] = new;
        }
        let weights: Vec<i64> = keep.iter().map(|&v| self.weights[v]).collect();
        let genera: Vec<u32> = keep.iter().map(|&v| self.genera[v]).collect();
        let mut edges = Vec::new();
        for &v in &keep {
            for &(w, mult) in &self.neighbors[v] {
                if v < w && index[w] != usize::MAX {
                    edges.push((index[v], index[w], mult));
                }
            }
        }
        PlumbingGraph::new(weights, genera, &edges).expect("induced subgraph of a valid graph")
    }
}

/// An effective cycle: one non-negative coefficient per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    coeffs: Vec<u64>,
}

impl Cycle {
    pub fn new(coeffs: Vec<u64>) -> Self {
        Cycle { coeffs }
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coeffs
    }
}

/// Outcome of [`PlumbingGraph::classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Rational,
    MinimallyElliptic,
    Other,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Rational => write!(f, "rational"),
            Classification::MinimallyElliptic => write!(f, "minimally elliptic"),
            Classification::Other => write!(f, "other"),
        }
    }
}

/// Negative continued fraction expansion `alpha/beta = [b_1, ..., b_k]`
/// with every `b_i >= 2`, where `[b_1, ...] = b_1 - 1/[b_2, ...]`.
pub fn hirzebruch_jung(alpha: u64, beta: u64) -> Result<Vec<u64>, PlumbingError> {
    if beta == 0 || beta >= alpha {
        return Err(PlumbingError::FractionOutOfRange { alpha, beta });
    }
    if alpha.gcd(&beta) != 1 {
        return Err(PlumbingError::FractionNotCoprime { alpha, beta });
    }
    let mut out = Vec::new();
    let (mut a, mut b) = (alpha, beta);
    while b > 0 {
        let q = a.div_ceil(b);
        out.push(q);
        let next = q * b - a;
        a = b;
        b = next;
    }
    Ok(out)
}

/// Evaluate a negative continued fraction back to `alpha/beta`.
fn evaluate_expansion(terms: &[BigInt]) -> (BigInt, BigInt) {
    let mut num = BigInt::one();
    let mut den = BigInt::zero();
    for b in terms.iter().rev() {
        let new_num = b * &num - &den;
        den = num;
        num = new_num;
    }
    (num, den)
}

/// Star plumbing whose boundary is the given Seifert manifold.
///
/// The center carries the background Euler number of `N`; each cone
/// point contributes a chain of weights `-b_j` from the expansion of
/// `alpha_i / beta_i`, attached to the center at its first vertex.
/// Needs a genus-zero base and negative fiber degree.
pub fn star_plumbing(y: &SeifertManifold) -> Result<PlumbingGraph, PlumbingError> {
    let n = y.line_bundle();
    let base = y.base();
    if base.genus() != 0 {
        return Err(PlumbingError::GenusUnsupported(base.genus()));
    }
    if !y.fiber_degree().is_negative() {
        return Err(PlumbingError::FiberDegreeNotNegative(y.fiber_degree()));
    }
    let center: i64 = n
        .e()
        .try_into()
        .map_err(|_| PlumbingError::WeightOverflow)?;
    let mut weights = vec![center];
    let mut edges = Vec::new();
    for (&alpha, &beta) in base.cone_orders().iter().zip(n.beta()) {
        let chain = hirzebruch_jung(alpha, beta)?;
        let mut prev = 0;
        for b in chain {
            let w: i64 = i64::try_from(b)
                .ok()
                .and_then(|b| b.checked_neg())
                .ok_or(PlumbingError::WeightOverflow)?;
            weights.push(w);
            edges.push((prev, weights.len() - 1));
            prev = weights.len() - 1;
        }
    }
    PlumbingGraph::from_weights(weights, &edges)
}

/// Recover Seifert data from a star plumbing.
///
/// The graph must have genus-zero vertices, simple edges, exactly one
/// vertex of degree at least three (the center), and legs that are
/// plain chains of weights at most `-2`. Chains without a distinguished
/// center are rejected as ambiguous rather than guessed at. Inverts
/// [`star_plumbing`] exactly.
pub fn seifert_from_star(graph: &PlumbingGraph) -> Result<SeifertManifold, PlumbingError> {
    if let Some(v) = graph.genera().iter().position(|&g| g != 0) {
        return Err(PlumbingError::NotStar {
            reason: format!("vertex {v} carries positive genus"),
        });
    }
    if graph
        .neighbors
        .iter()
        .any(|row| row.iter().any(|&(_, mult)| mult > 1))
    {
        return Err(PlumbingError::NotStar {
            reason: "multiple edges between two vertices".to_string(),
        });
    }
    let n = graph.vertex_count();
    if n == 1 {
        let base = OrbifoldSurface::sphere(&[]).expect("no cone points");
        let bundle = OrbLineBundle::new(base, graph.weights()[0], &[]);
        return Ok(SeifertManifold::from_bundle(bundle)?);
    }
    let degree = |v: usize| graph.neighbors[v].len();
    let centers: Vec<usize> = (0..n).filter(|&v| degree(v) >= 3).collect();
    let center = match centers.as_slice() {
        [] => return Err(PlumbingError::AmbiguousChain),
        [c] => *c,
        _ => {
            return Err(PlumbingError::NotStar {
                reason: "more than one vertex of degree at least three".to_string(),
            })
        }
    };
    let mut cone_orders = Vec::new();
    let mut beta = Vec::new();
    let mut visited = vec![false; n];
    visited[center] = true;
    for &(first, _) in &graph.neighbors[center] {
        let mut terms = Vec::new();
        let mut prev = center;
        let mut here = first;
        loop {
            if visited[here] {
                return Err(PlumbingError::NotStar {
                    reason: "legs meet away from the center".to_string(),
                });
            }
            visited[here] = true;
            let w = graph.weights()[here];
            if w > -2 {
                return Err(PlumbingError::NotStar {
                    reason: format!("leg vertex {here} has weight {w} above -2"),
                });
            }
            terms.push(BigInt::from(-w));
            let mut next = None;
            for &(u, _) in &graph.neighbors[here] {
                if u != prev {
                    if next.replace(u).is_some() {
                        return Err(PlumbingError::NotStar {
                            reason: format!("leg branches at vertex {here}"),
                        });
                    }
                }
            }
            match next {
                None => break,
                Some(u) => {
                    prev = here;
                    here = u;
                }
            }
        }
        let (alpha, b) = evaluate_expansion(&terms);
        let alpha: u64 = (&alpha)
            .try_into()
            .map_err(|_| PlumbingError::WeightOverflow)?;
        let b: u64 = (&b).try_into().map_err(|_| PlumbingError::WeightOverflow)?;
        cone_orders.push(alpha);
        beta.push(b as i64);
    }
    let base = OrbifoldSurface::sphere(&cone_orders).map_err(SeifertError::from)?;
    let bundle = OrbLineBundle::new(base, graph.weights()[center], &beta);
    Ok(SeifertManifold::from_bundle(bundle)?)
}

/// Which boundary Dehn twist family an exceptional configuration sits in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwistFamily {
    Plus,
    Minus,
}

impl fmt::Display for TwistFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwistFamily::Plus => write!(f, "plus"),
            TwistFamily::Minus => write!(f, "minus"),
        }
    }
}

/// Which cone point each reference leg landed on, as positions into the
/// Brieskorn exponent triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LegAssignment {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

/// Result of checking an exceptional configuration against its star.
#[derive(Debug, Clone)]
pub struct EmbeddingReport {
    pub family: TwistFamily,
    pub p: u64,
    pub s: u64,
    pub exponents: (u64, u64, u64),
    pub vertex_count: usize,
    pub leg_assignment: LegAssignment,
    /// The change of basis reproduces the star's intersection matrix.
    pub gram_matches: bool,
    /// The distinguished class pairs by adjunction with the center and
    /// the first vertex of each leg.
    pub adjunction_holds: bool,
    /// Square of the distinguished class against the ambient signature.
    pub signature_matches: bool,
    pub c1_square: BigInt,
}

impl EmbeddingReport {
    pub fn all_checks_pass(&self) -> bool {
        self.gram_matches && self.adjunction_holds && self.signature_matches
    }
}

struct PrimedBasis {
    dim: usize,
    x0: usize,
    y0: usize,
    z0: usize,
}

impl PrimedBasis {
    fn new(x_len: usize, y_len: usize, z_len: usize) -> Self {
        PrimedBasis {
            dim: 1 + x_len + y_len + z_len,
            x0: 1,
            y0: 1 + x_len,
            z0: 1 + x_len + y_len,
        }
    }

    fn zero(&self) -> Vec<i64> {
        vec![0; self.dim]
    }

    fn w(&self) -> usize {
        0
    }

    fn x(&self, t: usize) -> usize {
        self.x0 + t - 1
    }

    fn y(&self, t: usize) -> usize {
        self.y0 + t - 1
    }

    fn z(&self, t: usize) -> usize {
        self.z0 + t - 1
    }
}

/// Pairing of coordinate vectors in the standard negative-definite
/// diagonal lattice.
fn diagonal_pairing(u: &[i64], v: &[i64]) -> i64 {
    -u.iter().zip(v).map(|(a, b)| a * b).sum::<i64>()
}

/// Verify the exceptional sphere configuration for one twist family.
///
/// Builds the Brieskorn manifold of the family at parameters `(p, s)`,
/// its star plumbing, and the explicit basis change into the standard
/// diagonal lattice, then checks that the Gram matrix reproduces the
/// star, that adjunction holds at the center and the first leg
/// vertices, and that the square of the distinguished class equals the
/// signature. Leg matching tries every length-compatible assignment and
/// reports a mismatch rather than silently permuting.
pub fn verify_embedding(
    family: TwistFamily,
    p: u64,
    s: u64,
) -> Result<EmbeddingReport, PlumbingError> {
    match family {
        TwistFamily::Plus => {
            if p < 3 || p % 2 == 0 || s < 1 {
                return Err(PlumbingError::FamilyParameter {
                    family: "plus",
                    requirement: "odd p >= 3 and s >= 1",
                    p,
                    s,
                });
            }
        }
        TwistFamily::Minus => {
            if p < 5 || p % 2 == 0 || s < 2 {
                return Err(PlumbingError::FamilyParameter {
                    family: "minus",
                    requirement: "odd p >= 5 and s >= 2",
                    p,
                    s,
                });
            }
        }
    }
    let ps = p.checked_mul(s).ok_or(PlumbingError::ParameterOverflow)?;
    let (a2, a3) = match family {
        TwistFamily::Plus => (
            ps.checked_add(1).ok_or(PlumbingError::ParameterOverflow)?,
            ps.checked_add(2).ok_or(PlumbingError::ParameterOverflow)?,
        ),
        TwistFamily::Minus => (ps - 1, ps - 2),
    };
    let y = SeifertManifold::brieskorn(p, a2, a3)?;
    let graph = star_plumbing(&y)?;
    let matrix = graph.intersection_matrix();

    let r = usize::try_from((p - 1) / 2).map_err(|_| PlumbingError::ParameterOverflow)?;
    let s_len = usize::try_from(s).map_err(|_| PlumbingError::ParameterOverflow)?;
    let role_lens: [usize; 3] = match family {
        TwistFamily::Plus => [s_len, r + 1, r],
        TwistFamily::Minus => [2, r + s_len - 2, r],
    };

    let data = y.line_bundle();
    let mut leg_lens = Vec::new();
    let mut leg_starts = Vec::new();
    let mut next = 1;
    for (&alpha, &beta) in y.base().cone_orders().iter().zip(data.beta()) {
        let len = hirzebruch_jung(alpha, beta)?.len();
        leg_starts.push(next);
        leg_lens.push(len);
        next += len;
    }
    let n = graph.vertex_count();

    let basis = PrimedBasis::new(role_lens[0], role_lens[1], role_lens[2]);
    let (role_vectors, c1) = build_reference_vectors(family, &basis, r, s_len);

    for assignment in length_matched_assignments(&role_lens, &leg_lens) {
        // Graph order: center first, then legs in cone order; map each
        // graph vertex to its reference vector under this assignment.
        let mut vectors: Vec<&Vec<i64>> = Vec::with_capacity(n);
        vectors.push(&role_vectors[0][0]);
        for cone in 0..leg_lens.len() {
            let role = [assignment.x, assignment.y, assignment.z]
                .iter()
                .position(|&c| c == cone)
                .expect("assignment covers every cone");
            for t in 0..leg_lens[cone] {
                vectors.push(&role_vectors[role + 1][t]);
            }
        }
        let gram_matches = (0..n).all(|i| {
            (0..n).all(|j| BigInt::from(diagonal_pairing(vectors[i], vectors[j])) == matrix[i][j])
        });
        if !gram_matches {
            continue;
        }
        let adjunction_holds = [0, assignment.x, assignment.y, assignment.z]
            .iter()
            .enumerate()
            .all(|(role, &cone)| {
                let v = if role == 0 {
                    vectors[0]
                } else {
                    vectors[leg_starts[cone]]
                };
                diagonal_pairing(&c1, v) == diagonal_pairing(v, v) + 2
            });
        let c1_square = BigInt::from(diagonal_pairing(&c1, &c1));
        let signature_matches = c1_square == -BigInt::from(n as u64);
        return Ok(EmbeddingReport {
            family,
            p,
            s,
            exponents: (p, a2, a3),
            vertex_count: n,
            leg_assignment: assignment,
            gram_matches,
            adjunction_holds,
            signature_matches,
            c1_square,
        });
    }
    Err(PlumbingError::EmbeddingMismatch {
        details: format!(
            "reference legs of lengths {:?} against star legs of lengths {:?} for exponents ({p}, {a2}, {a3})",
            role_lens, leg_lens
        ),
    })
}

/// All ways to assign the reference legs x, y, z to cone points with
/// matching chain lengths.
fn length_matched_assignments(role_lens: &[usize; 3], leg_lens: &[usize]) -> Vec<LegAssignment> {
    let mut out = Vec::new();
    if leg_lens.len() != 3 {
        return out;
    }
    for x in 0..3 {
        for y in 0..3 {
            for z in 0..3 {
                if x == y || y == z || x == z {
                    continue;
                }
                if leg_lens[x] == role_lens[0]
                    && leg_lens[y] == role_lens[1]
                    && leg_lens[z] == role_lens[2]
                {
                    out.push(LegAssignment { x, y, z });
                }
            }
        }
    }
    out
}

/// The reference classes in the diagonal lattice: `[w], [x_i], [y_i],
/// [z_i]` grouped by role, plus the distinguished class.
#[allow(clippy::type_complexity)]
fn build_reference_vectors(
    family: TwistFamily,
    basis: &PrimedBasis,
    r: usize,
    s: usize,
) -> ([Vec<Vec<i64>>; 4], Vec<i64>) {
    let mut w = basis.zero();
    w[basis.w()] = 1;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut zs = Vec::new();
    let mut c1 = basis.zero();
    match family {
        TwistFamily::Plus => {
            let mut x1 = basis.zero();
            x1[basis.w()] = -1;
            x1[basis.x(1)] = 1;
            for t in 2..=r + 1 {
                x1[basis.y(t)] = 1;
            }
            for t in 1..=r {
                x1[basis.z(t)] = -1;
            }
            xs.push(x1);
            for i in 2..=s {
                let mut x = basis.zero();
                x[basis.x(i)] = 1;
                x[basis.x(i - 1)] = -1;
                xs.push(x);
            }
            let mut y1 = basis.zero();
            y1[basis.w()] = -1;
            y1[basis.y(1)] = 1;
            y1[basis.y(2)] = -1;
            ys.push(y1);
            for i in 2..=r {
                let mut y = basis.zero();
                y[basis.y(i)] = 1;
                y[basis.y(i + 1)] = -1;
                ys.push(y);
            }
            let mut y_last = basis.zero();
            y_last[basis.y(r + 1)] = 1;
            for t in 1..=s {
                y_last[basis.x(t)] = -1;
            }
            ys.push(y_last);
            let mut z1 = basis.zero();
            z1[basis.w()] = -1;
            z1[basis.z(1)] = 1;
            z1[basis.y(1)] = -1;
            zs.push(z1);
            for i in 2..=r {
                let mut z = basis.zero();
                z[basis.z(i)] = 1;
                z[basis.z(i - 1)] = -1;
                zs.push(z);
            }
            c1[basis.w()] = -1;
            for t in 1..=s {
                c1[basis.x(t)] = 1;
            }
            c1[basis.y(1)] = -1;
            c1[basis.y(2)] = -1;
            for t in 3..=r + 1 {
                c1[basis.y(t)] = 1;
            }
            for t in 1..=r {
                c1[basis.z(t)] = -1;
            }
        }
        TwistFamily::Minus => {
            let mut x1 = basis.zero();
            x1[basis.w()] = -1;
            x1[basis.x(1)] = -1;
            x1[basis.x(2)] = 1;
            for t in 1..=r - 1 {
                x1[basis.y(t)] = 1;
            }
            for t in 2..=r {
                x1[basis.z(t)] = -1;
            }
            xs.push(x1);
            let mut x2 = basis.zero();
            x2[basis.x(2)] = -1;
            for t in r..=r + s - 2 {
                x2[basis.y(t)] = -1;
            }
            xs.push(x2);
            let mut y1 = basis.zero();
            y1[basis.w()] = -1;
            y1[basis.y(1)] = -1;
            y1[basis.z(1)] = 1;
            ys.push(y1);
            for i in 2..=r - 1 {
                let mut y = basis.zero();
                y[basis.y(i - 1)] = 1;
                y[basis.y(i)] = -1;
                ys.push(y);
            }
            let mut y_r = basis.zero();
            y_r[basis.y(r)] = 1;
            y_r[basis.y(r - 1)] = 1;
            y_r[basis.x(2)] = -1;
            ys.push(y_r);
            for i in r + 1..=r + s - 2 {
                let mut y = basis.zero();
                y[basis.y(i)] = 1;
                y[basis.y(i - 1)] = -1;
                ys.push(y);
            }
            let mut z1 = basis.zero();
            z1[basis.w()] = -1;
            z1[basis.z(1)] = -1;
            z1[basis.z(2)] = 1;
            zs.push(z1);
            for i in 2..=r - 1 {
                let mut z = basis.zero();
                z[basis.z(i + 1)] = 1;
                z[basis.z(i)] = -1;
                zs.push(z);
            }
            let mut z_r = basis.zero();
            z_r[basis.x(1)] = 1;
            z_r[basis.z(r)] = -1;
            zs.push(z_r);
            c1[basis.w()] = -1;
            c1[basis.x(1)] = -1;
            c1[basis.x(2)] = 1;
            c1[basis.y(1)] = -1;
            for t in 2..=r + s - 2 {
                c1[basis.y(t)] = 1;
            }
            for t in 1..=r {
                c1[basis.z(t)] = -1;
            }
        }
    }
    ([vec![w], xs, ys, zs], c1)
}
