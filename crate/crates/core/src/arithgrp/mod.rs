//! Exact checks of the group-theoretic witnesses: the automorphism `α` of
//! `Γ = G(Z[1/p])` and the non-Hopfian quotient `Γ/Z`, plus the
//! outer-automorphism and coHopf statements for `SL_n(Z) ⋉ Mat_{n×m}(Z)`.

mod gamma;
mod semidirect;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use gamma::{
    alpha, alpha_inv, conjugator, coset_reduce, generator_positions, induced_endo, kernel_elements, random_element,
    random_element_with, CenterElement, Coset, GammaElement, MAX_KERNEL_ENUMERATION,
};
pub use semidirect::{
    cohopf_embed, conjugate, is_inner, phi_g, scale_abelian, sd_mul, CohopfReport, InnerWitness, SDElement, ZMatrix,
};

use crate::exactla::{PLocal, QMatrix, Rat};
use crate::nilpotent::BlockPattern;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("{0} is not in Z[1/{1}]")]
    NotInRing(String, u64),
    #[error("group invariant violated: {0}")]
    Invariant(String),
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("matrix is not invertible over the integers")]
    NotUnimodular,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Outcome of [`verify_nonhopf`]. Every flag must hold for `verified()`.
#[derive(Debug, Clone)]
pub struct NonHopfReport {
    pub pattern: BlockPattern,
    pub p: u64,
    pub pairs_checked: usize,
    /// `α(gh) = α(g)α(h)` on every sampled pair.
    pub alpha_homomorphism: bool,
    /// `α∘α⁻¹ = α⁻¹∘α = id` and both outputs satisfy the `Γ` invariants.
    pub alpha_bijective: bool,
    /// `α(g) = u g u⁻¹` with `u = diag(pI, I, ..., I)`.
    pub alpha_is_conjugation: bool,
    /// Sampled centre elements commute with sampled group elements.
    pub center_is_central: bool,
    /// `α` sends the basis of `Z` to `p` times itself.
    pub alpha_center_is_pz: bool,
    /// `[Z : α(Z)]`.
    pub center_index: BigInt,
    /// `p^{n1·nK}`.
    pub expected_kernel_size: BigInt,
    pub kernel_size: usize,
    pub kernel_maps_to_identity: bool,
    /// Some kernel coset other than the identity: the non-injectivity witness.
    pub kernel_witness: Option<Coset>,
    /// Two representatives of one coset have equal images.
    pub well_defined: bool,
    /// Every sampled coset has the explicit preimage `coset_reduce(α⁻¹(rep))`.
    pub surjective_on_samples: bool,
    /// A sampled coset with its preimage.
    pub surjectivity_witness: Option<(Coset, Coset)>,
}

impl NonHopfReport {
    pub fn verified(&self) -> bool {
        self.alpha_homomorphism
            && self.alpha_bijective
            && self.alpha_is_conjugation
            && self.center_is_central
            && self.alpha_center_is_pz
            && self.center_index > BigInt::from(1)
            && BigInt::from(self.kernel_size) == self.expected_kernel_size
            && self.kernel_maps_to_identity
            && self.kernel_witness.is_some()
            && self.well_defined
            && self.surjective_on_samples
    }
}

fn random_center(pattern: &BlockPattern, rng: &mut ChaCha8Rng) -> CenterElement {
    use rand::Rng;
    let cells = pattern.sizes()[0] * pattern.sizes()[pattern.num_blocks() - 1];
    CenterElement { entries: (0..cells).map(|_| BigInt::from(rng.gen_range(-5i64..=5))).collect() }
}

/// Runs every non-Hopf check on `pairs` seeded random pairs of elements.
pub fn verify_nonhopf(pattern: &BlockPattern, p: u64, pairs: usize, seed: u64) -> Result<NonHopfReport, GroupError> {
    if !pattern.has_identity_ends() {
        return Err(GroupError::UnsupportedShape(format!(
            "non-Hopf check needs kinds (id, sl, ..., sl, id), got {:?}",
            pattern.kinds()
        )));
    }
    if !crate::nilpotent::is_prime(p) {
        return Err(GroupError::InvalidParameter(format!("{p} is not prime")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = conjugator(pattern, p);
    let u_inv = u.inverse().expect("square").expect("invertible");
    let word = 8;

    let mut alpha_homomorphism = true;
    let mut alpha_bijective = true;
    let mut alpha_is_conjugation = true;
    let mut center_is_central = true;
    let mut well_defined = true;
    let mut surjective_on_samples = true;
    let mut surjectivity_witness = None;
    for _ in 0..pairs {
        let g = random_element_with(pattern, p, &mut rng, word);
        let h = random_element_with(pattern, p, &mut rng, word);
        let (ag, ah) = (alpha(&g)?, alpha(&h)?);
        alpha_homomorphism &= alpha(&g.mul(&h)?)? == ag.mul(&ah)?;

        let back = alpha_inv(&g)?;
        alpha_bijective &= alpha(&back)? == g && alpha_inv(&ag)? == g;
        alpha_bijective &= ag.check_invariants().is_ok() && back.check_invariants().is_ok();

        alpha_is_conjugation &= ag.to_qmatrix() == u.mul(&g.to_qmatrix()).and_then(|x| x.mul(&u_inv)).expect("square");

        let z = random_center(pattern, &mut rng).to_gamma(pattern, p)?;
        center_is_central &= g.mul(&z)? == z.mul(&g)?;

        let c = coset_reduce(&g)?;
        well_defined &= c == coset_reduce(&g.mul(&z)?)?;
        well_defined &= induced_endo(&c)? == induced_endo(&coset_reduce(&g.mul(&z)?)?)?;

        let pre = coset_reduce(&back)?;
        let hit = induced_endo(&pre)? == c;
        surjective_on_samples &= hit;
        if hit && surjectivity_witness.is_none() && !c.is_identity() {
            surjectivity_witness = Some((c, pre));
        }
    }

    // α on the lattice Z: image of each basis element E_ab
    let (n1, nk) = (pattern.sizes()[0], pattern.sizes()[pattern.num_blocks() - 1]);
    let cells = n1 * nk;
    let last = pattern.num_blocks() - 1;
    let mut image_rows = Vec::with_capacity(cells);
    let mut alpha_center_is_pz = true;
    for cell in 0..cells {
        let mut entries = vec![BigInt::from(0); cells];
        entries[cell] = BigInt::from(1);
        let z = CenterElement { entries }.to_gamma(pattern, p)?;
        let az = alpha(&z)?;
        let block: Vec<Rat> = az.block(0, last).into_iter().flatten().collect();
        alpha_center_is_pz &= block.iter().all(Rat::is_integer);
        alpha_center_is_pz &= block
            .iter()
            .enumerate()
            .all(|(k, x)| *x == if k == cell { Rat::from_int(p as i64) } else { Rat::ZERO });
        image_rows.push(block);
    }
    let det = QMatrix::from_rows(image_rows).determinant().expect("square");
    let center_index = det.abs().numer();

    let kernel = kernel_elements(pattern, p)?;
    let identity = coset_reduce(&GammaElement::identity(pattern, p))?;
    let mut kernel_maps_to_identity = true;
    for c in &kernel {
        kernel_maps_to_identity &= induced_endo(c)? == identity;
    }
    let kernel_witness = kernel.iter().find(|c| !c.is_identity()).cloned();

    Ok(NonHopfReport {
        pattern: pattern.clone(),
        p,
        pairs_checked: pairs,
        alpha_homomorphism,
        alpha_bijective,
        alpha_is_conjugation,
        center_is_central,
        alpha_center_is_pz,
        center_index,
        expected_kernel_size: BigInt::from(p).pow(cells as u32),
        kernel_size: kernel.len(),
        kernel_maps_to_identity,
        kernel_witness,
        well_defined,
        surjective_on_samples,
        surjectivity_witness,
    })
}

/// Brute-force kernel: cosets of centre elements with `(0, K-1)` entries in
/// `(1/p²)Z ∩ [0, 1)` that map to the identity. Used to cross-check
/// [`kernel_elements`].
pub fn kernel_by_enumeration(pattern: &BlockPattern, p: u64) -> Result<Vec<Coset>, GroupError> {
    let (n1, nk) = (pattern.sizes()[0], pattern.sizes()[pattern.num_blocks() - 1]);
    let cells = (n1 * nk) as u32;
    let q = p * p;
    let total = q.checked_pow(cells).filter(|&t| t <= MAX_KERNEL_ENUMERATION).ok_or_else(|| {
        GroupError::InvalidParameter("enumeration too large".into())
    })?;
    let identity = coset_reduce(&GammaElement::identity(pattern, p))?;
    let mut out = Vec::new();
    for code in 0..total {
        let mut rest = code;
        let entries: Vec<PLocal> = (0..cells)
            .map(|_| {
                let d = rest % q;
                rest /= q;
                PLocal::from_parts(BigInt::from(d), 2, p)
            })
            .collect();
        let n = pattern.total_size();
        let off = pattern.offset(pattern.num_blocks() - 1);
        let mut rows = QMatrix::identity(n).to_dense_rows();
        for (cell, x) in entries.iter().enumerate() {
            rows[cell / nk][off + cell % nk] = x.to_rat();
        }
        let c = coset_reduce(&GammaElement::from_rats(pattern, p, &rows)?)?;
        if induced_endo(&c)? == identity {
            out.push(c);
        }
    }
    Ok(out)
}
