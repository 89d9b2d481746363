//! Bipartite unimodular Galton–Watson trees.
//!
//! Each side has a joint law `π_{d,w}` of (degree, constraint). The root is
//! of type A with probability `m^B / (m^A + m^B)` and draws from its own
//! law; every other vertex draws its number of children and its constraint
//! from the size-biased law `π̂_{n,w} = (n + 1) π_{n+1,w} / m` of its type.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;
use rand_distr::Poisson;

use super::RandomError;
use crate::graph::ConstrainedBipartiteGraph;

const PMF_TOL: f64 = 1e-12;

/// Law of (degree, constraint) for one vertex type.
#[derive(Debug, Clone, PartialEq)]
pub enum TypeLaw {
    /// Finitely supported joint pmf, as `(degree, constraint, probability)`.
    Joint(Vec<(u32, u32, f64)>),
    /// Poisson degree with the given mean and a constant constraint.
    PoissonConst { mean: f64, w: u32 },
}

impl TypeLaw {
    /// Degree `d` and constraint `w` almost surely.
    pub fn constant(d: u32, w: u32) -> Self {
        TypeLaw::Joint(vec![(d, w, 1.0)])
    }

    pub fn mean_degree(&self) -> f64 {
        match self {
            TypeLaw::Joint(pmf) => pmf.iter().map(|&(d, _, p)| d as f64 * p).sum(),
            TypeLaw::PoissonConst { mean, .. } => *mean,
        }
    }

    fn validate(&self, side: &str) -> Result<(), RandomError> {
        let bad = |msg: String| Err(RandomError::InvalidSpec(format!("{side}: {msg}")));
        match self {
            TypeLaw::Joint(pmf) => {
                if let Some(&(d, w, p)) = pmf.iter().find(|&&(_, _, p)| !(p >= 0.0 && p.is_finite())) {
                    return bad(format!("probability {p} at ({d}, {w})"));
                }
                let total: f64 = pmf.iter().map(|t| t.2).sum();
                if (total - 1.0).abs() > PMF_TOL {
                    return bad(format!("pmf sums to {total}"));
                }
                if pmf.iter().any(|&(_, w, p)| w == 0 && p > 0.0) {
                    return bad("constraint 0 has positive probability".into());
                }
            }
            TypeLaw::PoissonConst { mean, w } => {
                if !(mean.is_finite() && *mean >= 0.0) {
                    return bad(format!("Poisson mean {mean}"));
                }
                if *w == 0 {
                    return bad("constraint 0".into());
                }
            }
        }
        if self.mean_degree() <= 0.0 {
            return bad("mean degree is zero".into());
        }
        Ok(())
    }

    /// The size-biased law `π̂`, for finitely supported laws.
    pub fn size_biased(&self) -> Option<Vec<(u32, u32, f64)>> {
        match self {
            TypeLaw::Joint(pmf) => {
                let m = self.mean_degree();
                Some(pmf.iter().filter(|t| t.0 > 0).map(|&(d, w, p)| (d - 1, w, d as f64 * p / m)).collect())
            }
            TypeLaw::PoissonConst { .. } => None,
        }
    }
}

/// Poisson(`mean`) degrees with constant constraint `w`, cut where the
/// remaining upper tail is below `tail` and renormalized. Returns the law and
/// the mass that was cut.
pub fn truncated_poisson(mean: f64, w: u32, tail: f64) -> (TypeLaw, f64) {
    let mut pmf = Vec::new();
    let mut term = (-mean).exp();
    let mut kept = 0.0;
    let mut d = 0u32;
    loop {
        pmf.push((d, w, term));
        kept += term;
        if 1.0 - kept < tail && d as f64 > mean {
            break;
        }
        d += 1;
        term *= mean / d as f64;
    }
    let cut = (1.0 - kept).max(0.0);
    for t in &mut pmf {
        t.2 /= kept;
    }
    (TypeLaw::Joint(pmf), cut)
}

#[derive(Debug, Clone)]
enum Sampler {
    Table { values: Vec<(u32, u32)>, index: WeightedIndex<f64> },
    Poisson { dist: Option<Poisson<f64>>, w: u32 },
}

impl Sampler {
    fn from_pmf(pmf: &[(u32, u32, f64)]) -> Self {
        let values = pmf.iter().map(|&(d, w, _)| (d, w)).collect();
        let index = WeightedIndex::new(pmf.iter().map(|t| t.2)).expect("validated pmf");
        Sampler::Table { values, index }
    }

    fn poisson(mean: f64, w: u32) -> Self {
        let dist = (mean > 0.0).then(|| Poisson::new(mean).expect("validated mean"));
        Sampler::Poisson { dist, w }
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> (u32, u32) {
        match self {
            Sampler::Table { values, index } => values[index.sample(rng)],
            Sampler::Poisson { dist, w } => (dist.as_ref().map_or(0, |p| p.sample(rng) as u32), *w),
        }
    }
}

/// The pair of laws `(π^A, π^B)` with ready-made samplers.
#[derive(Debug, Clone)]
pub struct BugwtSpec {
    pub a: TypeLaw,
    pub b: TypeLaw,
    root: [Sampler; 2],
    biased: [Sampler; 2],
}

impl BugwtSpec {
    pub fn new(a: TypeLaw, b: TypeLaw) -> Result<Self, RandomError> {
        a.validate("A")?;
        b.validate("B")?;
        let make = |law: &TypeLaw| match law {
            TypeLaw::Joint(pmf) => (Sampler::from_pmf(pmf), Sampler::from_pmf(&law.size_biased().unwrap())),
            // size-biasing a Poisson degree gives the same Poisson law
            TypeLaw::PoissonConst { mean, w } => (Sampler::poisson(*mean, *w), Sampler::poisson(*mean, *w)),
        };
        let (ra, ba) = make(&a);
        let (rb, bb) = make(&b);
        Ok(BugwtSpec { a, b, root: [ra, rb], biased: [ba, bb] })
    }

    /// Local limit of incidence graphs of `H_{n, cn, h}` with `(l, k)`
    /// constraints: hyperedges have degree `h` and cap `l`, vertices have
    /// Poisson(`c h`) degree and cap `k`.
    pub fn uniform_model(h: u32, l: u32, k: u32, c: f64) -> Result<Self, RandomError> {
        Self::new(TypeLaw::constant(h, l), TypeLaw::PoissonConst { mean: c * h as f64, w: k })
    }

    /// Probability that the root is of type A.
    pub fn root_a_probability(&self) -> f64 {
        let (ma, mb) = (self.a.mean_degree(), self.b.mean_degree());
        mb / (ma + mb)
    }
}

/// A sampled tree. `graph` keeps the constraints as caps.
#[derive(Debug, Clone)]
pub struct BugwtTree {
    pub graph: ConstrainedBipartiteGraph,
    pub root_is_a: bool,
    pub root: u32,
}

/// Samples the tree truncated at `depth` generations below the root.
pub fn sample_bugwt<R: Rng + ?Sized>(rng: &mut R, spec: &BugwtSpec, depth: usize) -> BugwtTree {
    let root_is_a = rng.random_bool(spec.root_a_probability());
    // side 0 is A, side 1 is B
    let mut caps: [Vec<u32>; 2] = [Vec::new(), Vec::new()];
    let mut edges = Vec::new();
    let root_side = usize::from(!root_is_a);
    let (d, w) = spec.root[root_side].sample(rng);
    caps[root_side].push(w);
    let mut frontier = vec![(root_side, 0u32, d)];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (side, idx, children) in frontier {
            let child_side = 1 - side;
            for _ in 0..children {
                let (n, w) = spec.biased[child_side].sample(rng);
                let child = caps[child_side].len() as u32;
                caps[child_side].push(w);
                edges.push(if side == 0 { (idx, child) } else { (child, idx) });
                next.push((child_side, child, n));
            }
        }
        frontier = next;
    }
    let [caps_a, caps_b] = caps;
    let graph = ConstrainedBipartiteGraph::new(caps_a.len(), caps_b.len(), edges, caps_a, caps_b)
        .expect("tree edges are distinct");
    BugwtTree { graph, root_is_a, root: 0 }
}
