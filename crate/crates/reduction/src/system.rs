use num_traits::{One, Zero};

use lie_algebra::{EnvElement, GeneratorBasis};
use masa::{uniform_sign, CatalogName, MasaParams, MasaSpec, SignedPermutation};
use numeric_core::{CMatrixExact, CRat, Scalar};
use phase_space::{Jet, PhaseError, PhasePoly, PhaseRational};

use crate::integrals::{integrals_catalog, Integral};
use crate::ReductionError;

/// Square matrix of phase-space polynomials, row-major.
pub type PolyMatrix = Vec<Vec<PhasePoly>>;

/// `(M s)_μ = Σ_σ M_{μσ} s_σ`.
fn mat_s(m: &CMatrixExact, n: usize) -> Vec<PhasePoly> {
    (0..n)
        .map(|mu| {
            (0..n).fold(PhasePoly::zero(n), |acc, sg| {
                let c = m.get(mu, sg);
                if c.is_zero() {
                    acc
                } else {
                    &acc + &PhasePoly::s(n, sg).scale(c)
                }
            })
        })
        .collect()
}

fn minor(m: &PolyMatrix, r: usize, c: usize) -> PolyMatrix {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != r)
        .map(|(_, row)| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect())
        .collect()
}

fn det(m: &PolyMatrix, nv: usize) -> PhasePoly {
    match m.len() {
        0 => PhasePoly::one(nv),
        1 => m[0][0].clone(),
        _ => (0..m.len()).fold(PhasePoly::zero(nv), |acc, j| {
            if m[0][j].is_zero() {
                return acc;
            }
            let t = &m[0][j] * &det(&minor(m, 0, j), nv);
            if j % 2 == 0 {
                &acc + &t
            } else {
                &acc - &t
            }
        }),
    }
}

fn adjugate(m: &PolyMatrix, nv: usize) -> PolyMatrix {
    let n = m.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = det(&minor(m, j, i), nv);
                    if (i + j) % 2 == 0 {
                        c
                    } else {
                        -&c
                    }
                })
                .collect()
        })
        .collect()
}

/// `𝒜_{μν} = (Z_ν)_{μσ} s_σ`.
pub fn build_a(masa: &MasaSpec) -> PolyMatrix {
    let n = masa.n();
    let cols: Vec<Vec<PhasePoly>> = masa.matrices().iter().map(|z| mat_s(z, n)).collect();
    (0..n).map(|mu| (0..n).map(|nu| cols[nu][mu].clone()).collect()).collect()
}

/// `𝒱_{μν} = −sᵀ Z_μ Z_ν s`, straight from the generators.
pub fn build_v_matrix(masa: &MasaSpec) -> Result<PolyMatrix, ReductionError> {
    let n = masa.n();
    let zs = masa.matrices();
    let mut out = vec![vec![PhasePoly::zero(n); n]; n];
    for mu in 0..n {
        for nu in 0..n {
            let prod = zs[mu].checked_mul(&zs[nu])?;
            let zs_s = mat_s(&prod, n);
            let q = (0..n).fold(PhasePoly::zero(n), |acc, a| &acc + &(&PhasePoly::s(n, a) * &zs_s[a]));
            out[mu][nu] = -&q;
        }
    }
    Ok(out)
}

/// Parity data carried by a reduced system.
#[derive(Clone, Debug, PartialEq)]
pub struct PtData {
    pub parity: SignedPermutation,
    pub signs: Vec<i8>,
    pub uniform: Option<i8>,
}

/// Symbolic reduction data for one MASA.
#[derive(Clone, Debug)]
pub struct Reducer {
    masa: MasaSpec,
    basis: GeneratorBasis,
    a: PolyMatrix,
    adj_a: PolyMatrix,
    det_a: PhasePoly,
    inv_det: PhaseRational,
    // per generator: p-part and the numerator of the k-part over det 𝒜
    parts: Vec<(PhasePoly, PhasePoly)>,
}

impl Reducer {
    pub fn new(masa: &MasaSpec) -> Result<Self, ReductionError> {
        let n = masa.n();
        let a = build_a(masa);
        let det_a = det(&a, n);
        if det_a.is_zero() {
            return Err(ReductionError::DegenerateMasa);
        }
        let adj_a = adjugate(&a, n);
        let inv_det = PhaseRational::new(PhasePoly::one(n), &det_a)?;
        let basis = masa.basis();
        let mut r = Reducer { masa: masa.clone(), basis, a, adj_a, det_a, inv_det, parts: Vec::new() };
        r.parts = r.basis.generators().iter().map(|g| r.parts_of(g)).collect();
        Ok(r)
    }

    pub fn n(&self) -> usize {
        self.masa.n()
    }

    pub fn masa(&self) -> &MasaSpec {
        &self.masa
    }

    pub fn basis(&self) -> &GeneratorBasis {
        &self.basis
    }

    pub fn a(&self) -> &PolyMatrix {
        &self.a
    }

    pub fn adj_a(&self) -> &PolyMatrix {
        &self.adj_a
    }

    pub fn det_a(&self) -> &PhasePoly {
        &self.det_a
    }

    fn parts_of(&self, x: &CMatrixExact) -> (PhasePoly, PhasePoly) {
        let n = self.n();
        let anti = x.antisym_part();
        let anti_s = mat_s(&anti, n);
        let p_part = (0..n).fold(PhasePoly::zero(n), |acc, mu| &acc + &(&PhasePoly::p(n, mu) * &anti_s[mu]));
        let sym_s = mat_s(&x.sym_part(), n);
        let mut k_num = PhasePoly::zero(n);
        for sg in 0..n {
            let row = (0..n).fold(PhasePoly::zero(n), |acc, nu| &acc + &(&self.adj_a[sg][nu] * &sym_s[nu]));
            k_num = &k_num + &(&PhasePoly::k(n, sg) * &row);
        }
        (p_part, k_num)
    }

    /// `X̂ = pᵀ·½(X − Xᵀ)·s + kᵀ𝒜⁻¹·½(X + Xᵀ)·s`.
    pub fn momentum_map(&self, x: &CMatrixExact) -> PhaseRational {
        let (p, k) = self.parts_of(x);
        &PhaseRational::from_poly(p) + &(&PhaseRational::from_poly(k) * &self.inv_det)
    }

    /// `X̂_i` for basis generator `i`.
    pub fn hat(&self, i: usize) -> PhaseRational {
        let (p, k) = &self.parts[i];
        &PhaseRational::from_poly(p.clone()) + &(&PhaseRational::from_poly(k.clone()) * &self.inv_det)
    }

    /// Jets of every `X̂_i` at `x`.
    pub fn hat_jets(&self, x: &[CRat], order: u8) -> Result<Vec<Jet>, PhaseError> {
        let inv = self.det_a.jet(x, order).inv()?;
        Ok(self.parts.iter().map(|(p, k)| p.jet(x, order).add(&k.jet(x, order).mul(&inv))).collect())
    }

    /// `kᵀ𝒱⁻¹k = −|kᵀ adj 𝒜|² / (det 𝒜)²`.
    pub fn potential(&self) -> PhaseRational {
        let n = self.n();
        let mut num = PhasePoly::zero(n);
        for nu in 0..n {
            let w = (0..n).fold(PhasePoly::zero(n), |acc, sg| &acc + &(&PhasePoly::k(n, sg) * &self.adj_a[sg][nu]));
            num = &num - &w.pow(2);
        }
        &(&PhaseRational::from_poly(num) * &self.inv_det) * &self.inv_det
    }

    /// `−𝒜ᵀ𝒜`.
    pub fn gram(&self) -> PolyMatrix {
        let n = self.n();
        (0..n)
            .map(|mu| {
                (0..n)
                    .map(|nu| {
                        let g = (0..n).fold(PhasePoly::zero(n), |acc, sg| &acc + &(&self.a[sg][mu] * &self.a[sg][nu]));
                        -&g
                    })
                    .collect()
            })
            .collect()
    }

    /// Classical image of an enveloping element: words become products of hats.
    pub fn project(&self, e: &EnvElement) -> PhaseRational {
        let n = self.n();
        e.terms().fold(PhaseRational::zero(n), |acc, (w, c)| {
            let prod = w.letters().fold(PhaseRational::constant(n, c.clone()), |p, l| &p * &self.hat(l));
            &acc + &prod
        })
    }

    /// Jet of the projection of `e` from precomputed hat jets.
    pub fn project_jet(&self, e: &EnvElement, jets: &[Jet]) -> Jet {
        let m = jets[0].nvars();
        let order = jets[0].order();
        e.terms().fold(Jet::constant(m, order, Scalar::zero()), |acc, (w, c)| {
            let prod = w.letters().fold(Jet::constant(m, order, Scalar::one()), |p, l| p.mul(&jets[l]));
            acc.add(&prod.scale(c))
        })
    }

    /// Jet of `X̂` for an arbitrary combination `Σ c_i X_i`.
    pub fn combine_jets(coeffs: &[Scalar], jets: &[Jet]) -> Jet {
        let m = jets[0].nvars();
        coeffs
            .iter()
            .zip(jets)
            .filter(|(c, _)| !c.is_zero())
            .fold(Jet::constant(m, jets[0].order(), Scalar::zero()), |acc, (c, j)| acc.add(&j.scale(c)))
    }
}

/// Rational potential `V(k, s)`; also checks `𝒱 = −𝒜ᵀ𝒜` as polynomials.
pub fn build_potential(masa: &MasaSpec) -> Result<PhaseRational, ReductionError> {
    let r = Reducer::new(masa)?;
    let direct = build_v_matrix(masa)?;
    let gram = r.gram();
    for (mu, (row_d, row_g)) in direct.iter().zip(&gram).enumerate() {
        if let Some(nu) = row_d.iter().zip(row_g).position(|(x, y)| x != y) {
            return Err(ReductionError::GramMismatch(mu, nu));
        }
    }
    Ok(r.potential())
}

pub fn momentum_map(x: &CMatrixExact, masa: &MasaSpec) -> Result<PhaseRational, ReductionError> {
    Ok(Reducer::new(masa)?.momentum_map(x))
}

pub fn project_env_element(e: &EnvElement, masa: &MasaSpec) -> Result<PhaseRational, ReductionError> {
    if e.degree() > 3 {
        return Err(lie_algebra::LieError::WordTooLong { len: e.degree(), max: 3 }.into());
    }
    Ok(Reducer::new(masa)?.project(e))
}

/// Reduced Hamiltonian with the attached catalog data.
#[derive(Clone, Debug)]
pub struct ReducedSystem {
    pub masa: MasaSpec,
    pub potential: PhaseRational,
    pub hamiltonian: PhaseRational,
    pub integrals: Vec<Integral>,
    pub pt: Option<PtData>,
    pub coupling_symbols: Vec<String>,
}

/// `Ĥ = p·p + V`. Catalog integrals are attached when the MASA carries a
/// catalog name; `params` must then be the parameters it was built with.
pub fn build_hamiltonian(masa: &MasaSpec, params: &MasaParams) -> Result<ReducedSystem, ReductionError> {
    let n = masa.n();
    let potential = build_potential(masa)?;
    let hamiltonian = &PhaseRational::from_poly(PhasePoly::p_dot_p(n)) + &potential;
    let integrals = match masa.name().map(str::parse::<CatalogName>) {
        Some(Ok(name)) => integrals_catalog(name.as_str(), params)?,
        _ => Vec::new(),
    };
    let pt = match (masa.parity(), masa.pt_sign()) {
        (Some(p), Some(eps)) => Some(PtData { parity: p.clone(), signs: eps.to_vec(), uniform: uniform_sign(eps) }),
        _ => None,
    };
    let coupling_symbols = (1..=n).map(|i| format!("k{i}")).collect();
    Ok(ReducedSystem { masa: masa.clone(), potential, hamiltonian, integrals, pt, coupling_symbols })
}

impl ReducedSystem {
    pub fn n(&self) -> usize {
        self.masa.n()
    }

    pub fn integral(&self, name: &str) -> Option<&Integral> {
        self.integrals.iter().find(|i| i.name == name)
    }
}
