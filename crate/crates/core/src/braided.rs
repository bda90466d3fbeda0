//! Braided Hopf algebra data: the braiding tensor Ψ, the braided axiom
//! suite as exact tensor identities, q-arithmetic, and the braided
//! builtin constructions.

pub mod qplane;

use crate::error::{Error, Result};
use crate::hopf::{AxiomReport, HopfAlgebraData, Matrix};
use crate::linalg;
use crate::scalars::RatFunc;
use crate::smash::{build_smash_custom, SmashAlgebra, Tensor4};
use std::collections::HashMap;

/// Ψ(b_i⊗b_j) = Σ Ψ[i][j][k][l] b_k⊗b_l.
#[derive(Debug, Clone)]
pub struct BraidingTensor {
    pub psi: Tensor4,
}

#[derive(Debug, Clone)]
pub struct BraidedHopfData {
    pub base: HopfAlgebraData,
    pub braiding: BraidingTensor,
}

/// A dually paired couple of braided Hopf algebras together with the
/// cross tensor of their semidirect product and the mixed braiding
/// Ψ_HA(e_j⊗f_i) = Σ psi_ha[j][i][k][l] f_k⊗e_l used by the canonical
/// element.
#[derive(Debug, Clone)]
pub struct BraidedPair {
    pub a: BraidedHopfData,
    pub h: BraidedHopfData,
    pub pairing: Matrix,
    pub cross: Tensor4,
    pub psi_ha: Tensor4,
    /// Basis indices of the generators (paired in order between A and H).
    pub gens_a: Vec<usize>,
    pub gens_h: Vec<usize>,
}

type Sparse3 = HashMap<(usize, usize, usize), RatFunc>;

fn psi_on_legs(
    psi: &Tensor4,
    state: &Sparse3,
    first_leg: usize, // 0: legs (0,1); 1: legs (1,2)
) -> Sparse3 {
    let mut out: Sparse3 = HashMap::new();
    for ((i, j, k), c) in state {
        let (x, y, fixed) = match first_leg {
            0 => (*i, *j, *k),
            _ => (*j, *k, *i),
        };
        for (a, row) in psi[x][y].iter().enumerate() {
            for (b, p) in row.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                let key = match first_leg {
                    0 => (a, b, fixed),
                    _ => (fixed, a, b),
                };
                let e = out.entry(key).or_insert_with(RatFunc::zero);
                *e = &*e + &(c * p);
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn psi_matrix(psi: &Tensor4, n: usize) -> Matrix {
    let mut m = crate::hopf::zero_matrix(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    m[k * n + l][i * n + j] = psi[i][j][k][l].clone();
                }
            }
        }
    }
    m
}

/// Evaluates the full braided axiom suite as exact identities.
pub fn check_braided_axioms(b: &BraidedHopfData) -> AxiomReport {
    let mut report = b.base.check_axioms_common();
    let n = b.base.dim;
    let psi = &b.braiding.psi;

    report.push(
        "psi-invertible",
        if linalg::invert(&psi_matrix(psi, n)).is_some() {
            None
        } else {
            Some("Ψ is singular on the tensor square".into())
        },
    );

    // Yang–Baxter on the tensor cube.
    let mut w = None;
    'yb: for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let start: Sparse3 =
                    HashMap::from([((i, j, k), RatFunc::one())]);
                let lhs = psi_on_legs(psi, &psi_on_legs(psi, &psi_on_legs(psi, &start, 0), 1), 0);
                let rhs = psi_on_legs(psi, &psi_on_legs(psi, &psi_on_legs(psi, &start, 1), 0), 1);
                if !sparse3_eq(&lhs, &rhs) {
                    w = Some(format!("b_{i}⊗b_{j}⊗b_{k}"));
                    break 'yb;
                }
            }
        }
    }
    report.push("yang-baxter", w);

    report.push("braiding-unit", b.witness_braiding_unit());
    report.push("braiding-counit", b.witness_braiding_counit());
    report.push("braiding-product", b.witness_braiding_product());
    report.push("braiding-coproduct", b.witness_braiding_coproduct());
    report.push("braiding-antipode", b.witness_braiding_antipode());
    report.push("braided-bialgebra", b.witness_braided_bialgebra());
    report.push("braided-antihomomorphism", b.witness_braided_antihom());
    report
}

fn sparse3_eq(a: &Sparse3, b: &Sparse3) -> bool {
    for (k, v) in a {
        if b.get(k).map(|w| w == v).unwrap_or(v.is_zero()) {
            continue;
        }
        return false;
    }
    b.iter().all(|(k, v)| a.contains_key(k) || v.is_zero())
}

impl BraidedHopfData {
    /// Ψ applied to a coefficient matrix on the tensor square.
    pub fn psi_apply(&self, m: &Matrix) -> Matrix {
        let n = self.base.dim;
        let mut out = crate::hopf::zero_matrix(n, n);
        for i in 0..n {
            for j in 0..n {
                if m[i][j].is_zero() {
                    continue;
                }
                for k in 0..n {
                    for l in 0..n {
                        let p = &self.braiding.psi[i][j][k][l];
                        if !p.is_zero() {
                            out[k][l] = &out[k][l] + &(&m[i][j] * p);
                        }
                    }
                }
            }
        }
        out
    }

    fn witness_braiding_unit(&self) -> Option<String> {
        let n = self.base.dim;
        let unit = &self.base.unit;
        for t in 0..n {
            // Ψ(1⊗b_t) = b_t⊗1 and Ψ(b_t⊗1) = 1⊗b_t
            let mut left = crate::hopf::zero_matrix(n, n);
            let mut right = crate::hopf::zero_matrix(n, n);
            for (i, u) in unit.iter().enumerate() {
                if u.is_zero() {
                    continue;
                }
                for k in 0..n {
                    for l in 0..n {
                        left[k][l] = &left[k][l] + &(u * &self.braiding.psi[i][t][k][l]);
                        right[k][l] = &right[k][l] + &(u * &self.braiding.psi[t][i][k][l]);
                    }
                }
            }
            for k in 0..n {
                for l in 0..n {
                    let kron = if k == t { RatFunc::one() } else { RatFunc::zero() };
                    if left[k][l] != &kron * &unit[l] {
                        return Some(format!("Ψ(1⊗b_{t})"));
                    }
                    let kron = if l == t { RatFunc::one() } else { RatFunc::zero() };
                    if right[k][l] != &unit[k] * &kron {
                        return Some(format!("Ψ(b_{t}⊗1)"));
                    }
                }
            }
        }
        None
    }

    fn witness_braiding_counit(&self) -> Option<String> {
        let n = self.base.dim;
        let eps = &self.base.counit;
        for i in 0..n {
            for j in 0..n {
                // Ψ swaps the legs: (ε⊗id)Ψ(b_i⊗b_j) = ε(b_j) b_i and
                // (id⊗ε)Ψ(b_i⊗b_j) = ε(b_i) b_j.
                let mut eps_first = vec![RatFunc::zero(); n];
                let mut eps_second = vec![RatFunc::zero(); n];
                for k in 0..n {
                    for l in 0..n {
                        let p = &self.braiding.psi[i][j][k][l];
                        if p.is_zero() {
                            continue;
                        }
                        eps_first[l] = &eps_first[l] + &(p * &eps[k]);
                        eps_second[k] = &eps_second[k] + &(p * &eps[l]);
                    }
                }
                for t in 0..n {
                    let want = if t == i { eps[j].clone() } else { RatFunc::zero() };
                    if eps_first[t] != want {
                        return Some(format!("(ε⊗id)Ψ(b_{i}⊗b_{j})"));
                    }
                    let want = if t == j { eps[i].clone() } else { RatFunc::zero() };
                    if eps_second[t] != want {
                        return Some(format!("(id⊗ε)Ψ(b_{i}⊗b_{j})"));
                    }
                }
            }
        }
        None
    }

    fn witness_braiding_product(&self) -> Option<String> {
        let n = self.base.dim;
        let psi = &self.braiding.psi;
        let mult = &self.base.mult;
        for i in 0..n {
            for j in 0..n {
                for t in 0..n {
                    // Ψ(b_i b_j ⊗ b_t) = (id⊗m)(Ψ⊗id)(id⊗Ψ)(b_i⊗b_j⊗b_t)
                    let mut lhs = crate::hopf::zero_matrix(n, n);
                    for m1 in 0..n {
                        let c = &mult[i][j][m1];
                        if c.is_zero() {
                            continue;
                        }
                        for k in 0..n {
                            for l in 0..n {
                                let p = &psi[m1][t][k][l];
                                if !p.is_zero() {
                                    lhs[k][l] = &lhs[k][l] + &(c * p);
                                }
                            }
                        }
                    }
                    let mut rhs = crate::hopf::zero_matrix(n, n);
                    for k1 in 0..n {
                        for l1 in 0..n {
                            let p1 = &psi[j][t][k1][l1];
                            if p1.is_zero() {
                                continue;
                            }
                            for k2 in 0..n {
                                for l2 in 0..n {
                                    let p2 = &psi[i][k1][k2][l2];
                                    if p2.is_zero() {
                                        continue;
                                    }
                                    let c = p1 * p2;
                                    for r in 0..n {
                                        let m2 = &mult[l2][l1][r];
                                        if !m2.is_zero() {
                                            rhs[k2][r] = &rhs[k2][r] + &(&c * m2);
                                        }
                                    }
                                }
                            }
                        }
                    }
                    if lhs != rhs {
                        return Some(format!("Ψ((b_{i}b_{j})⊗b_{t})"));
                    }
                    // mirrored: Ψ(b_t ⊗ b_i b_j) = (m⊗id)(id⊗Ψ)(Ψ⊗id)
                    let mut lhs = crate::hopf::zero_matrix(n, n);
                    for m1 in 0..n {
                        let c = &mult[i][j][m1];
                        if c.is_zero() {
                            continue;
                        }
                        for k in 0..n {
                            for l in 0..n {
                                let p = &psi[t][m1][k][l];
                                if !p.is_zero() {
                                    lhs[k][l] = &lhs[k][l] + &(c * p);
                                }
                            }
                        }
                    }
                    let mut rhs = crate::hopf::zero_matrix(n, n);
                    for k1 in 0..n {
                        for l1 in 0..n {
                            let p1 = &psi[t][i][k1][l1];
                            if p1.is_zero() {
                                continue;
                            }
                            for k2 in 0..n {
                                for l2 in 0..n {
                                    let p2 = &psi[l1][j][k2][l2];
                                    if p2.is_zero() {
                                        continue;
                                    }
                                    let c = p1 * p2;
                                    for r in 0..n {
                                        let m2 = &mult[k1][k2][r];
                                        if !m2.is_zero() {
                                            rhs[r][l2] = &rhs[r][l2] + &(&c * m2);
                                        }
                                    }
                                }
                            }
                        }
                    }
                    if lhs != rhs {
                        return Some(format!("Ψ(b_{t}⊗(b_{i}b_{j}))"));
                    }
                }
            }
        }
        None
    }

    fn witness_braiding_coproduct(&self) -> Option<String> {
        let n = self.base.dim;
        let psi = &self.braiding.psi;
        let com = &self.base.comult;
        for i in 0..n {
            for t in 0..n {
                // (id⊗Δ)Ψ(b_i⊗b_t) = (Ψ⊗id)(id⊗Ψ)(Δ⊗id)(b_i⊗b_t)
                let mut lhs: Sparse3 = HashMap::new();
                for k in 0..n {
                    for l in 0..n {
                        let p = &psi[i][t][k][l];
                        if p.is_zero() {
                            continue;
                        }
                        for a in 0..n {
                            for b in 0..n {
                                let d = &com[l][a][b];
                                if !d.is_zero() {
                                    let e = lhs.entry((k, a, b)).or_insert_with(RatFunc::zero);
                                    *e = &*e + &(p * d);
                                }
                            }
                        }
                    }
                }
                let mut mid: Sparse3 = HashMap::new();
                for a in 0..n {
                    for b in 0..n {
                        let d = &com[i][a][b];
                        if !d.is_zero() {
                            mid.insert((a, b, t), d.clone());
                        }
                    }
                }
                let rhs = psi_on_legs(psi, &psi_on_legs(psi, &mid, 1), 0);
                if !sparse3_eq(&lhs, &rhs) {
                    return Some(format!("(id⊗Δ)Ψ(b_{i}⊗b_{t})"));
                }
                // (Δ⊗id)Ψ(b_t⊗b_i) = (id⊗Ψ)(Ψ⊗id)(id⊗Δ)(b_t⊗b_i)
                let mut lhs: Sparse3 = HashMap::new();
                for k in 0..n {
                    for l in 0..n {
                        let p = &psi[t][i][k][l];
                        if p.is_zero() {
                            continue;
                        }
                        for a in 0..n {
                            for b in 0..n {
                                let d = &com[k][a][b];
                                if !d.is_zero() {
                                    let e = lhs.entry((a, b, l)).or_insert_with(RatFunc::zero);
                                    *e = &*e + &(p * d);
                                }
                            }
                        }
                    }
                }
                let mut mid: Sparse3 = HashMap::new();
                for a in 0..n {
                    for b in 0..n {
                        let d = &com[i][a][b];
                        if !d.is_zero() {
                            mid.insert((t, a, b), d.clone());
                        }
                    }
                }
                let rhs = psi_on_legs(psi, &psi_on_legs(psi, &mid, 0), 1);
                if !sparse3_eq(&lhs, &rhs) {
                    return Some(format!("(Δ⊗id)Ψ(b_{t}⊗b_{i})"));
                }
            }
        }
        None
    }

    fn witness_braiding_antipode(&self) -> Option<String> {
        let n = self.base.dim;
        let psi = &self.braiding.psi;
        let s = &self.base.antipode;
        for i in 0..n {
            for j in 0..n {
                // Ψ(S⊗id) = (id⊗S)Ψ and Ψ(id⊗S) = (S⊗id)Ψ
                let mut l1 = crate::hopf::zero_matrix(n, n);
                let mut r1 = crate::hopf::zero_matrix(n, n);
                let mut l2 = crate::hopf::zero_matrix(n, n);
                let mut r2 = crate::hopf::zero_matrix(n, n);
                for k in 0..n {
                    for l in 0..n {
                        for m in 0..n {
                            if !s[i][m].is_zero() {
                                l1[k][l] = &l1[k][l] + &(&s[i][m] * &psi[m][j][k][l]);
                            }
                            if !psi[i][j][k][m].is_zero() {
                                r1[k][l] = &r1[k][l] + &(&psi[i][j][k][m] * &s[m][l]);
                            }
                            if !s[j][m].is_zero() {
                                l2[k][l] = &l2[k][l] + &(&s[j][m] * &psi[i][m][k][l]);
                            }
                            if !psi[i][j][m][l].is_zero() {
                                r2[k][l] = &r2[k][l] + &(&psi[i][j][m][l] * &s[m][k]);
                            }
                        }
                    }
                }
                if l1 != r1 {
                    return Some(format!("Ψ(S⊗id)(b_{i}⊗b_{j})"));
                }
                if l2 != r2 {
                    return Some(format!("Ψ(id⊗S)(b_{i}⊗b_{j})"));
                }
            }
        }
        None
    }

    fn witness_braided_bialgebra(&self) -> Option<String> {
        // Δ∘m = (m⊗m)∘(id⊗Ψ⊗id)∘(Δ⊗Δ)
        let n = self.base.dim;
        let h = &self.base;
        let psi = &self.braiding.psi;
        for i in 0..n {
            for j in 0..n {
                let mut lhs = crate::hopf::zero_matrix(n, n);
                for k in 0..n {
                    let m = &h.mult[i][j][k];
                    if m.is_zero() {
                        continue;
                    }
                    for a in 0..n {
                        for b in 0..n {
                            let d = &h.comult[k][a][b];
                            if !d.is_zero() {
                                lhs[a][b] = &lhs[a][b] + &(m * d);
                            }
                        }
                    }
                }
                let mut rhs = crate::hopf::zero_matrix(n, n);
                for p in 0..n {
                    for r in 0..n {
                        let di = &h.comult[i][p][r];
                        if di.is_zero() {
                            continue;
                        }
                        for s in 0..n {
                            for t in 0..n {
                                let dj = &h.comult[j][s][t];
                                if dj.is_zero() {
                                    continue;
                                }
                                let c0 = di * dj;
                                for u in 0..n {
                                    for v in 0..n {
                                        let pw = &psi[r][s][u][v];
                                        if pw.is_zero() {
                                            continue;
                                        }
                                        let c = &c0 * pw;
                                        for a in 0..n {
                                            let m1 = &h.mult[p][u][a];
                                            if m1.is_zero() {
                                                continue;
                                            }
                                            for b in 0..n {
                                                let m2 = &h.mult[v][t][b];
                                                if !m2.is_zero() {
                                                    rhs[a][b] =
                                                        &rhs[a][b] + &(&(&c * m1) * m2);
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                if lhs != rhs {
                    return Some(format!("Δ(b_{i}b_{j})"));
                }
            }
        }
        None
    }

    fn witness_braided_antihom(&self) -> Option<String> {
        // S∘m = m∘(S⊗S)∘Ψ
        let n = self.base.dim;
        let h = &self.base;
        let psi = &self.braiding.psi;
        for i in 0..n {
            for j in 0..n {
                let mut lhs = crate::hopf::zero_vector(n);
                for k in 0..n {
                    let m = &h.mult[i][j][k];
                    if m.is_zero() {
                        continue;
                    }
                    for l in 0..n {
                        if !h.antipode[k][l].is_zero() {
                            lhs[l] = &lhs[l] + &(m * &h.antipode[k][l]);
                        }
                    }
                }
                let mut rhs = crate::hopf::zero_vector(n);
                for k in 0..n {
                    for l in 0..n {
                        let p = &psi[i][j][k][l];
                        if p.is_zero() {
                            continue;
                        }
                        let sk = &h.antipode[k];
                        let sl = &h.antipode[l];
                        let prod = h.mul_coords(sk, sl);
                        for (t, c) in prod.iter().enumerate() {
                            if !c.is_zero() {
                                rhs[t] = &rhs[t] + &(p * c);
                            }
                        }
                    }
                }
                if lhs != rhs {
                    return Some(format!("S(b_{i}b_{j})"));
                }
            }
        }
        None
    }
}

/// The q-integer [k]_q = (1 − q^{2k})/(1 − q²), with the convention
/// [0]_q ≡ 1.
pub fn q_int(k: u32) -> RatFunc {
    if k == 0 {
        return RatFunc::one();
    }
    // 1 + q² + q⁴ + … + q^{2(k-1)}
    let mut acc = RatFunc::zero();
    for i in 0..k {
        acc = &acc + &RatFunc::q_pow(2 * i as i64);
    }
    acc
}

/// [k]_q! = [1]_q [2]_q … [k]_q, with [0]_q! = 1.
pub fn q_factorial(k: u32) -> RatFunc {
    (1..=k).fold(RatFunc::one(), |acc, i| &acc * &q_int(i))
}

/// [k]_{q^{-1}} = (1 − q^{-2k})/(1 − q^{-2}).
pub fn q_int_inv(k: u32) -> RatFunc {
    if k == 0 {
        return RatFunc::one();
    }
    let mut acc = RatFunc::zero();
    for i in 0..k {
        acc = &acc + &RatFunc::q_pow(-2 * i as i64);
    }
    acc
}

pub fn q_factorial_inv(k: u32) -> RatFunc {
    (1..=k).fold(RatFunc::one(), |acc, i| &acc * &q_int_inv(i))
}

/// Σ_{k=0..A} (−1)^k q^{k(k−2A+1)} [A]_q!/([k]_q![A−k]_q!), which must be
/// the canonical zero for every A ≥ 1.
pub fn q_vanishing_sum(a: u32) -> Result<RatFunc> {
    let fa = q_factorial(a);
    let mut acc = RatFunc::zero();
    for k in 0..=a {
        let sign = if k % 2 == 0 {
            RatFunc::one()
        } else {
            RatFunc::from_int(-1)
        };
        let exp = i64::from(k) * (i64::from(k) - 2 * i64::from(a) + 1);
        let num = &(&sign * &RatFunc::q_pow(exp)) * &fa;
        let den = &q_factorial(k) * &q_factorial(a - k);
        acc = &acc + &num.div(&den)?;
    }
    if !acc.is_zero() {
        return Err(Error::IdentityFailure(a));
    }
    Ok(acc)
}

/// The fermionic line: A = ⟨ξ⟩, H = ⟨σ⟩ with ξ² = σ² = 0, primitive
/// coproducts, Ψ(ξ⊗ξ) = −ξ⊗ξ, and cross relation σξ = 1 − ξσ.
pub fn build_fermionic_line() -> Result<(BraidedPair, SmashAlgebra)> {
    let line = |id: &str, gen: &str| -> Result<HopfAlgebraData> {
        let one = RatFunc::one;
        let mut mult = crate::hopf::zero_tensor3(2);
        mult[0][0][0] = one();
        mult[0][1][1] = one();
        mult[1][0][1] = one();
        let mut comult = crate::hopf::zero_tensor3(2);
        comult[0][0][0] = one();
        comult[1][1][0] = one();
        comult[1][0][1] = one();
        let mut antipode = crate::hopf::zero_matrix(2, 2);
        antipode[0][0] = one();
        antipode[1][1] = RatFunc::from_int(-1);
        let mut unit = crate::hopf::zero_vector(2);
        unit[0] = one();
        let mut counit = crate::hopf::zero_vector(2);
        counit[0] = one();
        HopfAlgebraData::assemble(
            id,
            vec!["1".into(), gen.into()],
            mult,
            unit,
            comult,
            counit,
            antipode,
        )
    };
    let fermionic_psi = || {
        let mut psi = vec![vec![vec![vec![RatFunc::zero(); 2]; 2]; 2]; 2];
        psi[0][0][0][0] = RatFunc::one();
        psi[0][1][1][0] = RatFunc::one();
        psi[1][0][0][1] = RatFunc::one();
        psi[1][1][1][1] = RatFunc::from_int(-1);
        BraidingTensor { psi }
    };
    let a = BraidedHopfData {
        base: line("fermionic-A", "xi")?,
        braiding: fermionic_psi(),
    };
    let h = BraidedHopfData {
        base: line("fermionic-H", "sigma")?,
        braiding: fermionic_psi(),
    };
    check_braided_axioms(&a).into_result()?;
    check_braided_axioms(&h).into_result()?;

    let mut cross = vec![vec![vec![vec![RatFunc::zero(); 2]; 2]; 2]; 2];
    for i in 0..2 {
        cross[0][i][i][0] = RatFunc::one();
    }
    cross[1][0][0][1] = RatFunc::one();
    cross[1][1][0][0] = RatFunc::one();
    cross[1][1][1][1] = RatFunc::from_int(-1);

    // mixed braiding Ψ(σ⊗ξ) = −ξ⊗σ
    let mut psi_ha = vec![vec![vec![vec![RatFunc::zero(); 2]; 2]; 2]; 2];
    psi_ha[0][0][0][0] = RatFunc::one();
    psi_ha[0][1][1][0] = RatFunc::one();
    psi_ha[1][0][0][1] = RatFunc::one();
    psi_ha[1][1][1][1] = RatFunc::from_int(-1);

    let smash = build_smash_custom(a.base.clone(), h.base.clone(), cross.clone())?;
    let pair = BraidedPair {
        a,
        h,
        pairing: smash.pairing.clone(),
        cross,
        psi_ha,
        gens_a: vec![1],
        gens_h: vec![1],
    };
    canonical_element_check(&pair)?;
    Ok((pair, smash))
}

/// Verifies that the dual-basis canonical element Σ f̃^i⊗e_i equals the
/// q-exponential e_{q^{-1}}(Σ ξ_g⊗σ_g) expanded in the braided tensor
/// product algebra A⊗H.
pub fn canonical_element_check(p: &BraidedPair) -> Result<()> {
    let na = p.a.base.dim;
    let nh = p.h.base.dim;
    let pinv = linalg::invert(&p.pairing).ok_or_else(|| {
        Error::ConsistencyFailure("braided pairing is singular".into())
    })?;
    // C[l][i] = coefficient of f_l⊗e_i
    let mut expected = crate::hopf::zero_matrix(na, nh);
    for l in 0..na {
        for i in 0..nh {
            expected[l][i] = pinv[l][i].clone();
        }
    }

    // X = Σ_g ξ_g⊗σ_g
    let mut x = crate::hopf::zero_matrix(na, nh);
    for (ga, gh) in p.gens_a.iter().zip(&p.gens_h) {
        x[*ga][*gh] = RatFunc::one();
    }
    // product in A⊗H with the mixed braiding:
    // (a1⊗h1)(a2⊗h2) = Σ psi_ha[h1][a2][k][l] (a1·f_k)⊗(e_l·h2)
    let tensor_mul = |u: &Matrix, v: &Matrix| -> Matrix {
        let mut out = crate::hopf::zero_matrix(na, nh);
        for i1 in 0..na {
            for j1 in 0..nh {
                if u[i1][j1].is_zero() {
                    continue;
                }
                for i2 in 0..na {
                    for j2 in 0..nh {
                        if v[i2][j2].is_zero() {
                            continue;
                        }
                        let c0 = &u[i1][j1] * &v[i2][j2];
                        for k in 0..na {
                            for l in 0..nh {
                                let pw = &p.psi_ha[j1][i2][k][l];
                                if pw.is_zero() {
                                    continue;
                                }
                                let c = &c0 * pw;
                                for m in 0..na {
                                    let ma = &p.a.base.mult[i1][k][m];
                                    if ma.is_zero() {
                                        continue;
                                    }
                                    for r in 0..nh {
                                        let mh = &p.h.base.mult[l][j2][r];
                                        if !mh.is_zero() {
                                            out[m][r] =
                                                &out[m][r] + &(&(&c * ma) * mh);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    };

    // unit of A⊗H
    let mut acc = crate::hopf::zero_matrix(na, nh);
    for (i, ua) in p.a.base.unit.iter().enumerate() {
        for (j, uh) in p.h.base.unit.iter().enumerate() {
            acc[i][j] = ua * uh;
        }
    }
    let mut power = acc.clone(); // X^0 = 1
    for k in 1..=(na.max(nh) as u32) {
        power = tensor_mul(&power, &x);
        if power.iter().flatten().all(|c| c.is_zero()) {
            break;
        }
        let coeff = q_factorial_inv(k).inv()?;
        for i in 0..na {
            for j in 0..nh {
                if !power[i][j].is_zero() {
                    acc[i][j] = &acc[i][j] + &(&power[i][j] * &coeff);
                }
            }
        }
    }
    if acc != expected {
        return Err(Error::ConsistencyFailure(
            "canonical element does not match the q-exponential".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_integers() {
        assert!(q_int(1).is_one());
        assert_eq!(q_int(2).to_string(), "1 + q^2");
        assert!(q_factorial(0).is_one());
        assert_eq!(q_factorial(2), q_int(2));
    }

    #[test]
    fn vanishing_sums() {
        for a in 1..=6 {
            assert!(q_vanishing_sum(a).unwrap().is_zero(), "A = {a}");
        }
    }

    #[test]
    fn fermionic_line_passes_all_checks() {
        let (pair, smash) = build_fermionic_line().unwrap();
        assert!(check_braided_axioms(&pair.a).all_pass());
        assert!(check_braided_axioms(&pair.h).all_pass());
        assert_eq!(smash.pairing, linalg::identity(2));
    }

    #[test]
    fn unbraided_flip_fails_braided_bialgebra() {
        let (pair, _) = build_fermionic_line().unwrap();
        // replace Ψ by the plain transposition τ
        let mut psi = vec![vec![vec![vec![RatFunc::zero(); 2]; 2]; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                psi[i][j][j][i] = RatFunc::one();
            }
        }
        let flipped = BraidedHopfData {
            base: pair.a.base.clone(),
            braiding: BraidingTensor { psi },
        };
        let report = check_braided_axioms(&flipped);
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect();
        assert!(failed.contains(&"braided-bialgebra"), "failed = {failed:?}");
    }

    #[test]
    fn fermionic_integrals_via_braided_builder() {
        let (_, smash) = build_fermionic_line().unwrap();
        let proj = crate::integrals::solve_vacuum_projectors(&smash).unwrap();
        let r = crate::integrals::vacuum_integral_A(&smash, &proj, &smash.a.basis_element(1))
            .unwrap();
        assert!(r.value.is_one());
        let r0 = crate::integrals::vacuum_integral_A(&smash, &proj, &smash.a.basis_element(0))
            .unwrap();
        assert!(r0.value.is_zero());
    }
}
