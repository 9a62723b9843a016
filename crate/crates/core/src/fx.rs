//! The map `f_X : |dVR(X, E)| → (X, E)`.
//!
//! A point of the realization is a carrier simplex plus barycentric
//! coordinates `t₀, …, tₙ` against the carrier's witness ordering. On the
//! standard simplex `|x − eᵢ|² = Σ t_k² − 2tᵢ + 1`, so the Voronoi cell of
//! `vᵢ` is exactly where `tᵢ` is maximal. `f_X` sends a point to its
//! nearest vertex; when several vertices tie, it picks the tied vertex that
//! comes last in the carrier's witness. All comparisons are exact.
//!
//! Points on a proper face must be presented on that face's own simplex
//! (with its own witness) to get the skeleton-by-skeleton definition;
//! [`RealizationPoint::on_carrier`] does that push-down.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{Simplex, SimplicialComplex};
use crate::digraph::{Digraph, VertexSet};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationPoint {
    witness: Vec<usize>,
    coords: Vec<BigRational>,
}

impl RealizationPoint {
    /// A point of `|σ|`, coordinates indexed against `σ`'s witness.
    pub fn new(carrier: &Simplex, coords: Vec<BigRational>) -> Result<Self> {
        Self::from_parts(carrier.witness().to_vec(), coords)
    }

    fn from_parts(witness: Vec<usize>, coords: Vec<BigRational>) -> Result<Self> {
        if coords.len() != witness.len() {
            return Err(Error::InvalidPoint(format!(
                "{} coordinates for a carrier with {} vertices",
                coords.len(),
                witness.len()
            )));
        }
        if coords.iter().any(Signed::is_negative) {
            return Err(Error::InvalidPoint("negative barycentric coordinate".into()));
        }
        let total: BigRational = coords.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidPoint(format!("coordinates sum to {total}, not 1")));
        }
        Ok(RealizationPoint { witness, coords })
    }

    /// The vertex `v` of `σ` itself.
    pub fn vertex(carrier: &Simplex, v: usize) -> Result<Self> {
        let coords = carrier
            .witness()
            .iter()
            .map(|&w| if w == v { BigRational::one() } else { BigRational::zero() })
            .collect();
        Self::new(carrier, coords)
    }

    /// The barycenter of `σ`: every coordinate `1/(n+1)`.
    pub fn barycenter(carrier: &Simplex) -> Self {
        let n = carrier.witness().len();
        let c = BigRational::new(BigInt::one(), BigInt::from(n));
        RealizationPoint { witness: carrier.witness().to_vec(), coords: vec![c; n] }
    }

    /// Carrier witness ordering.
    pub fn witness(&self) -> &[usize] {
        &self.witness
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    /// Re-expresses the point on its minimal carrier in `k`: vertices with
    /// zero coordinate are dropped and the remaining coordinates are
    /// re-indexed against that face's own witness.
    pub fn on_carrier(&self, k: &SimplicialComplex) -> Result<Self> {
        let support = VertexSet::new(
            self.witness
                .iter()
                .zip(&self.coords)
                .filter(|(_, c)| !c.is_zero())
                .map(|(&v, _)| v),
        );
        let face = k
            .get(support.as_slice())
            .ok_or_else(|| Error::NotASubcomplex(support.as_slice().to_vec()))?;
        let coords = face
            .witness()
            .iter()
            .map(|v| {
                let i = self.witness.iter().position(|w| w == v).expect("face of carrier");
                self.coords[i].clone()
            })
            .collect();
        Ok(RealizationPoint { witness: face.witness().to_vec(), coords })
    }
}

/// Vertices of the carrier whose barycentric coordinate is maximal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TieSet(pub VertexSet);

impl TieSet {
    pub fn is_singleton(&self) -> bool {
        self.0.len() == 1
    }
}

pub fn tie_set(p: &RealizationPoint) -> TieSet {
    let max = p.coords.iter().max().expect("nonempty carrier");
    TieSet(
        p.witness
            .iter()
            .zip(&p.coords)
            .filter(|(_, c)| *c == max)
            .map(|(&v, _)| v)
            .collect(),
    )
}

/// `f_X(p)`: the tied vertex appearing last in the carrier's witness.
pub fn evaluate_fx(p: &RealizationPoint) -> usize {
    let max = p.coords.iter().max().expect("nonempty carrier");
    let i = p.coords.iter().rposition(|c| c == max).expect("max is attained");
    p.witness[i]
}

/// A triple `(σ, σ′, τ)` on which the neighborhood condition fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub simplex: Vec<usize>,
    pub face: Vec<usize>,
    pub tie: Vec<usize>,
    /// The `τ`-member last in `σ′`'s witness.
    pub image: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuityCertificate {
    pub passed: bool,
    /// Number of `(σ′, τ)` pairs examined.
    pub checked: usize,
    pub counterexample: Option<Counterexample>,
}

/// For every simplex `σ`, face `σ′ ⊆ σ` and nonempty `τ ⊆ σ′`, with `w`
/// the member of `τ` last in `σ′`'s witness, checks `v E w` for all
/// `v ∈ τ`, i.e. that points near the `τ`-tie region map into `U_w`.
/// Faces shared between simplices are examined once.
pub fn continuity_certificate(k: &SimplicialComplex, g: &Digraph) -> ContinuityCertificate {
    let mut done: HashSet<&[usize]> = HashSet::new();
    let mut checked = 0;
    for sigma in k.iter().rev() {
        let verts = sigma.vertices();
        if verts.len() > 30 {
            // 2^31 faces; nothing at this scale is a desk computation.
            continue;
        }
        for mask in 1u32..(1 << verts.len()) {
            let face_verts: Vec<usize> = (0..verts.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| verts[i])
                .collect();
            let Some(face) = k.get(&face_verts) else { continue };
            if !done.insert(face.vertices()) {
                continue;
            }
            let w = face.witness();
            for tau_mask in 1u32..(1 << w.len()) {
                checked += 1;
                let last = (0..w.len()).rev().find(|i| tau_mask & (1 << i) != 0).unwrap();
                let image = w[last];
                let ok = (0..w.len())
                    .filter(|i| tau_mask & (1 << i) != 0)
                    .all(|i| g.has_edge(w[i], image));
                if !ok {
                    let tie = VertexSet::new(
                        (0..w.len()).filter(|i| tau_mask & (1 << i) != 0).map(|i| w[i]),
                    );
                    return ContinuityCertificate {
                        passed: false,
                        checked,
                        counterexample: Some(Counterexample {
                            simplex: verts.to_vec(),
                            face: face.vertices().to_vec(),
                            tie: tie.into_vec(),
                            image,
                        }),
                    };
                }
            }
        }
    }
    ContinuityCertificate { passed: true, checked, counterexample: None }
}

/// Adds a zero-sum `offset` to `p`, clips negative coordinates to zero,
/// renormalizes, and moves the result onto its minimal carrier in `k`.
pub fn perturb(k: &SimplicialComplex, p: &RealizationPoint, offset: &[BigRational]) -> Result<RealizationPoint> {
    if offset.len() != p.coords.len() {
        return Err(Error::InvalidPoint("offset length differs from carrier".into()));
    }
    if !offset.iter().sum::<BigRational>().is_zero() {
        return Err(Error::InvalidPoint("offset must sum to zero".into()));
    }
    let mut moved: Vec<BigRational> = p
        .coords
        .iter()
        .zip(offset)
        .map(|(c, d)| {
            let x = c + d;
            if x.is_negative() { BigRational::zero() } else { x }
        })
        .collect();
    let total: BigRational = moved.iter().sum();
    if !total.is_one() {
        for x in &mut moved {
            *x = &*x / &total;
        }
    }
    RealizationPoint::from_parts(p.witness.clone(), moved)?.on_carrier(k)
}

#[derive(Clone, Debug)]
pub struct SampleOptions {
    pub samples: usize,
    /// ℓ¹ radius of the perturbation, in barycentric coordinates.
    pub delta: BigRational,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleFailure {
    pub index: usize,
    pub carrier: Vec<usize>,
    pub coords: Vec<BigRational>,
    pub image: usize,
    pub perturbed_image: usize,
    pub singleton_tie: bool,
    /// Largest radius along the same direction, found by halving, at which
    /// the perturbed image lands back in `U_{f(x)}`.
    pub clean_radius: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleReport {
    pub samples: usize,
    pub failures: usize,
    /// Failures among points whose tie set is a single vertex.
    pub singleton_failures: usize,
    /// Samples whose tie set has more than one vertex.
    pub tied_samples: usize,
    /// At most the first 32 failures, by sample index.
    pub failing: Vec<SampleFailure>,
}

impl SampleReport {
    pub fn failure_rate(&self) -> f64 {
        if self.samples == 0 {
            0.0
        } else {
            self.failures as f64 / self.samples as f64
        }
    }
}

const WEIGHT_MAX: u32 = 1000;
const MAX_REPORTED: usize = 32;
const MAX_HALVINGS: usize = 200;

/// Random interior point of `carrier`: integer weights in `1..=1000`,
/// normalized.
pub fn random_interior_point(rng: &mut impl Rng, carrier: &Simplex) -> RealizationPoint {
    let weights: Vec<u32> = (0..carrier.witness().len()).map(|_| rng.random_range(1..=WEIGHT_MAX)).collect();
    let total: u32 = weights.iter().sum();
    let coords = weights
        .iter()
        .map(|&w| BigRational::new(BigInt::from(w), BigInt::from(total)))
        .collect();
    RealizationPoint { witness: carrier.witness().to_vec(), coords }
}

/// Zero-sum offset with ℓ¹ norm exactly `radius` (or zero on a vertex).
fn random_offset(rng: &mut impl Rng, len: usize, radius: &BigRational) -> Vec<BigRational> {
    if len < 2 {
        return vec![BigRational::zero(); len];
    }
    loop {
        let raw: Vec<BigInt> = (0..len).map(|_| BigInt::from(rng.random_range(-1000i32..=1000))).collect();
        let sum: BigInt = raw.iter().sum();
        let n = BigInt::from(len);
        // d = raw − mean, scaled by n to stay integral.
        let centered: Vec<BigInt> = raw.iter().map(|r| r * &n - &sum).collect();
        let norm: BigInt = centered.iter().map(|c| c.abs()).sum();
        if norm.is_zero() {
            continue;
        }
        return centered
            .into_iter()
            .map(|c| BigRational::new(c, norm.clone()) * radius)
            .collect();
    }
}

/// Samples interior points, perturbs each within ℓ¹ radius `delta`, and
/// checks `f(perturbed) E f(x)`, i.e. that the image stays in the minimal
/// neighborhood of `f(x)`.
///
/// Sample `i` draws from its own ChaCha8 stream `i`, so results do not
/// depend on evaluation order.
pub fn sampled_continuity_check(k: &SimplicialComplex, g: &Digraph, opts: &SampleOptions) -> Result<SampleReport> {
    if !opts.delta.is_positive() {
        return Err(Error::InvalidArgument("delta must be positive".into()));
    }
    let all: Vec<&Simplex> = k.iter().collect();
    let mut report = SampleReport { samples: opts.samples, failures: 0, singleton_failures: 0, tied_samples: 0, failing: Vec::new() };
    if all.is_empty() {
        report.samples = 0;
        return Ok(report);
    }
    for index in 0..opts.samples {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(index as u64);
        let carrier = all[rng.random_range(0..all.len())];
        let x = random_interior_point(&mut rng, carrier);
        let image = evaluate_fx(&x);
        let singleton = tie_set(&x).is_singleton();
        if !singleton {
            report.tied_samples += 1;
        }
        // Random scale in (0, 1] so radii below delta are exercised too.
        let scale = BigRational::new(BigInt::from(rng.random_range(1..=WEIGHT_MAX)), BigInt::from(WEIGHT_MAX));
        let radius = &opts.delta * scale;
        let offset = random_offset(&mut rng, x.coords.len(), &radius);
        let moved = perturb(k, &x, &offset)?;
        let perturbed_image = evaluate_fx(&moved);
        if g.has_edge(perturbed_image, image) {
            continue;
        }
        report.failures += 1;
        if singleton {
            report.singleton_failures += 1;
        }
        if report.failing.len() < MAX_REPORTED {
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            let mut factor = BigRational::one();
            let mut clean_radius = BigRational::zero();
            for _ in 0..MAX_HALVINGS {
                factor *= &half;
                let scaled: Vec<BigRational> = offset.iter().map(|d| d * &factor).collect();
                let img = evaluate_fx(&perturb(k, &x, &scaled)?);
                if g.has_edge(img, image) {
                    clean_radius = &radius * &factor;
                    break;
                }
            }
            report.failing.push(SampleFailure {
                index,
                carrier: x.witness.clone(),
                coords: x.coords.clone(),
                image,
                perturbed_image,
                singleton_tie: singleton,
                clean_radius,
            });
        }
    }
    Ok(report)
}
