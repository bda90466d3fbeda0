//! The semidirect (smash) product A⋊H on the normal-ordered basis
//! f^i·e_j, built either from a dual pair or from an explicit
//! cross-relation tensor.

use crate::duality::DualPair;
use crate::error::{Error, Result};
use crate::hopf::{render_linear, zero_matrix, Element, HopfAlgebraData, Matrix};
use crate::scalars::RatFunc;

/// Rank-4 cross tensor: e_j·f^i = Σ_{r,s} X[j][i][r][s] f^r·e_s.
pub type Tensor4 = Vec<Vec<Vec<Vec<RatFunc>>>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    A,
    H,
}

/// Σ_{i,j} coeff[i][j] · f^i·e_j in normal order (A-part on the left).
#[derive(Debug, Clone, PartialEq)]
pub struct SmashElement {
    pub smash_id: String,
    pub coeff: Matrix,
}

impl SmashElement {
    pub fn is_zero(&self) -> bool {
        self.coeff.iter().flatten().all(|c| c.is_zero())
    }

    pub fn scale(&self, c: &RatFunc) -> SmashElement {
        SmashElement {
            smash_id: self.smash_id.clone(),
            coeff: self
                .coeff
                .iter()
                .map(|row| row.iter().map(|x| x * c).collect())
                .collect(),
        }
    }

    pub fn add(&self, other: &SmashElement) -> SmashElement {
        SmashElement {
            smash_id: self.smash_id.clone(),
            coeff: self
                .coeff
                .iter()
                .zip(&other.coeff)
                .map(|(r1, r2)| r1.iter().zip(r2).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }

    pub fn sub(&self, other: &SmashElement) -> SmashElement {
        self.add(&other.scale(&RatFunc::from_int(-1)))
    }
}

#[derive(Debug, Clone)]
pub struct SmashAlgebra {
    pub id: String,
    pub a: HopfAlgebraData,
    pub h: HopfAlgebraData,
    pub cross: Tensor4,
    /// Pairing recovered from the cross tensor: P[j][i] = (ε_A⊗ε_H)(e_j·f^i).
    pub pairing: Matrix,
    /// True when built from a validated dual pair (so the inverse-reordering
    /// and closed-form projector checks apply).
    pub unbraided: bool,
    /// Sparse product table on the flat basis: entry [u][v] lists
    /// (w, c) with b_u·b_v = Σ c·b_w, where u = i·dim(H) + j encodes f^i·e_j.
    table: Vec<Vec<Vec<(usize, RatFunc)>>>,
}

impl SmashAlgebra {
    pub fn dims(&self) -> (usize, usize) {
        (self.a.dim, self.h.dim)
    }

    fn flat(&self, i: usize, j: usize) -> usize {
        i * self.h.dim + j
    }

    pub fn zero(&self) -> SmashElement {
        SmashElement {
            smash_id: self.id.clone(),
            coeff: zero_matrix(self.a.dim, self.h.dim),
        }
    }

    pub fn one(&self) -> SmashElement {
        let mut out = self.zero();
        for (i, ua) in self.a.unit.iter().enumerate() {
            for (j, uh) in self.h.unit.iter().enumerate() {
                out.coeff[i][j] = ua * uh;
            }
        }
        out
    }

    /// Basis monomial f^i·e_j.
    pub fn monomial(&self, i: usize, j: usize) -> SmashElement {
        let mut out = self.zero();
        out.coeff[i][j] = RatFunc::one();
        out
    }

    pub fn embed(&self, which: Factor, u: &Element) -> Result<SmashElement> {
        let mut out = self.zero();
        match which {
            Factor::A => {
                if u.algebra_id != self.a.id || u.coords.len() != self.a.dim {
                    return Err(Error::AlgebraMismatch(format!(
                        "embedding `{}` into the A factor of `{}`",
                        u.algebra_id, self.id
                    )));
                }
                for (i, c) in u.coords.iter().enumerate() {
                    for (j, uh) in self.h.unit.iter().enumerate() {
                        out.coeff[i][j] = c * uh;
                    }
                }
            }
            Factor::H => {
                if u.algebra_id != self.h.id || u.coords.len() != self.h.dim {
                    return Err(Error::AlgebraMismatch(format!(
                        "embedding `{}` into the H factor of `{}`",
                        u.algebra_id, self.id
                    )));
                }
                for (j, c) in u.coords.iter().enumerate() {
                    for (i, ua) in self.a.unit.iter().enumerate() {
                        out.coeff[i][j] = ua * c;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, u: &SmashElement, v: &SmashElement) -> Result<SmashElement> {
        if u.smash_id != self.id || v.smash_id != self.id {
            return Err(Error::AlgebraMismatch(format!(
                "smash product over `{}`",
                self.id
            )));
        }
        let nh = self.h.dim;
        let mut out = self.zero();
        for (i, row) in u.coeff.iter().enumerate() {
            for (j, cu) in row.iter().enumerate() {
                if cu.is_zero() {
                    continue;
                }
                let fu = self.flat(i, j);
                for (k, vrow) in v.coeff.iter().enumerate() {
                    for (l, cv) in vrow.iter().enumerate() {
                        if cv.is_zero() {
                            continue;
                        }
                        let c = cu * cv;
                        for (w, t) in &self.table[fu][self.flat(k, l)] {
                            out.coeff[w / nh][w % nh] = &out.coeff[w / nh][w % nh] + &(&c * t);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Contracts the H leg with ε_H, leaving an A element. On x·a this
    /// recovers the left action x ▷ a (the right vacuum annihilates the
    /// H tail).
    pub fn project_a(&self, u: &SmashElement) -> Result<Element> {
        let mut coords = crate::hopf::zero_vector(self.a.dim);
        for (i, row) in u.coeff.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    coords[i] = &coords[i] + &(c * &self.h.counit[j]);
                }
            }
        }
        self.a.element(coords)
    }

    pub fn render(&self, u: &SmashElement) -> String {
        let mut labels = Vec::with_capacity(self.a.dim * self.h.dim);
        let mut coords = Vec::with_capacity(self.a.dim * self.h.dim);
        for i in 0..self.a.dim {
            for j in 0..self.h.dim {
                let la = &self.a.labels[i];
                let lh = &self.h.labels[j];
                labels.push(match (la.as_str(), lh.as_str()) {
                    ("1", "1") => "1".to_string(),
                    (_, "1") => la.clone(),
                    ("1", _) => lh.clone(),
                    _ => format!("{la}*{lh}"),
                });
                coords.push(u.coeff[i][j].clone());
            }
        }
        render_linear(&coords, &labels)
    }
}

/// Derives the cross tensor of an unbraided dual pair from
/// x·a = a_(1) ⟨x_(1), a_(2)⟩ x_(2) and builds the smash product.
pub fn build_smash(p: &DualPair) -> Result<SmashAlgebra> {
    let a = &p.functions;
    let h = &p.points;
    let (na, nh) = (a.dim, h.dim);
    let mut cross = vec![vec![vec![vec![RatFunc::zero(); nh]; na]; na]; nh];
    for j in 0..nh {
        for i in 0..na {
            for pp in 0..nh {
                for s in 0..nh {
                    let dh = &h.comult[j][pp][s];
                    if dh.is_zero() {
                        continue;
                    }
                    for r in 0..na {
                        for t in 0..na {
                            let da = &a.comult[i][r][t];
                            if da.is_zero() || p.pairing[pp][t].is_zero() {
                                continue;
                            }
                            cross[j][i][r][s] =
                                &cross[j][i][r][s] + &(&(dh * da) * &p.pairing[pp][t]);
                        }
                    }
                }
            }
        }
    }
    let s = assemble(a.clone(), h.clone(), cross, true)?;
    check_inverse_reordering(p, &s)?;
    Ok(s)
}

/// Smash product from an explicitly supplied cross tensor (the braided
/// case); associativity is the correctness gate.
pub fn build_smash_custom(
    a: HopfAlgebraData,
    h: HopfAlgebraData,
    cross: Tensor4,
) -> Result<SmashAlgebra> {
    assemble(a, h, cross, false)
}

fn assemble(
    a: HopfAlgebraData,
    h: HopfAlgebraData,
    cross: Tensor4,
    unbraided: bool,
) -> Result<SmashAlgebra> {
    let (na, nh) = (a.dim, h.dim);
    let x_ok = cross.len() == nh
        && cross.iter().all(|x| {
            x.len() == na
                && x.iter()
                    .all(|y| y.len() == na && y.iter().all(|z| z.len() == nh))
        });
    if !x_ok {
        return Err(Error::ShapeMismatch(format!(
            "cross tensor for dims ({na}, {nh})"
        )));
    }

    // Units must reorder trivially: 1_H·f^i = f^i·1_H and e_j·1_A = 1_A·e_j.
    for i in 0..na {
        for r in 0..na {
            for s in 0..nh {
                let lhs = (0..nh).fold(RatFunc::zero(), |acc, j| {
                    &acc + &(&h.unit[j] * &cross[j][i][r][s])
                });
                let rhs = if r == i { h.unit[s].clone() } else { RatFunc::zero() };
                if lhs != rhs {
                    return Err(Error::AssociativityFailure(format!(
                        "1_H·f^{i} fails to reorder to f^{i}·1_H"
                    )));
                }
            }
        }
    }
    for j in 0..nh {
        for r in 0..na {
            for s in 0..nh {
                let lhs = (0..na).fold(RatFunc::zero(), |acc, i| {
                    &acc + &(&a.unit[i] * &cross[j][i][r][s])
                });
                let rhs = if s == j { a.unit[r].clone() } else { RatFunc::zero() };
                if lhs != rhs {
                    return Err(Error::AssociativityFailure(format!(
                        "e_{j}·1_A fails to reorder to 1_A·e_{j}"
                    )));
                }
            }
        }
    }

    // P[j][i] = (ε_A ⊗ ε_H)(e_j·f^i), the vacuum expectation ⟨e_j, f^i⟩.
    let mut pairing = zero_matrix(nh, na);
    for j in 0..nh {
        for i in 0..na {
            for r in 0..na {
                for s in 0..nh {
                    let x = &cross[j][i][r][s];
                    if !x.is_zero() {
                        pairing[j][i] =
                            &pairing[j][i] + &(&(x * &a.counit[r]) * &h.counit[s]);
                    }
                }
            }
        }
    }

    // Precompute the product table on the flat basis:
    // (f^i e_j)(f^k e_l) = Σ X[j][k][r][s]·(f^i f^r)·(e_s e_l).
    let ns = na * nh;
    let mut table = vec![vec![Vec::new(); ns]; ns];
    for i in 0..na {
        for j in 0..nh {
            for k in 0..na {
                for l in 0..nh {
                    let mut acc = zero_matrix(na, nh);
                    for r in 0..na {
                        for s in 0..nh {
                            let x = &cross[j][k][r][s];
                            if x.is_zero() {
                                continue;
                            }
                            for m in 0..na {
                                let ma = &a.mult[i][r][m];
                                if ma.is_zero() {
                                    continue;
                                }
                                let c = x * ma;
                                for n in 0..nh {
                                    let mh = &h.mult[s][l][n];
                                    if !mh.is_zero() {
                                        acc[m][n] = &acc[m][n] + &(&c * mh);
                                    }
                                }
                            }
                        }
                    }
                    let mut entry = Vec::new();
                    for m in 0..na {
                        for n in 0..nh {
                            if !acc[m][n].is_zero() {
                                entry.push((m * nh + n, acc[m][n].clone()));
                            }
                        }
                    }
                    table[i * nh + j][k * nh + l] = entry;
                }
            }
        }
    }

    let s = SmashAlgebra {
        id: format!("{}><{}", a.id, h.id),
        a,
        h,
        cross,
        pairing,
        unbraided,
        table,
    };

    // Associativity over all basis triples, working on sparse rows.
    for u in 0..ns {
        for v in 0..ns {
            let uv = &s.table[u][v];
            for w in 0..ns {
                let mut lhs = vec![RatFunc::zero(); ns];
                for (m, c) in uv {
                    for (t, d) in &s.table[*m][w] {
                        lhs[*t] = &lhs[*t] + &(c * d);
                    }
                }
                let mut rhs = vec![RatFunc::zero(); ns];
                for (m, c) in &s.table[v][w] {
                    for (t, d) in &s.table[u][*m] {
                        rhs[*t] = &rhs[*t] + &(c * d);
                    }
                }
                if lhs != rhs {
                    return Err(Error::AssociativityFailure(format!(
                        "(b_{u}·b_{v})·b_{w} ≠ b_{u}·(b_{v}·b_{w})"
                    )));
                }
            }
        }
    }

    Ok(s)
}

/// In the unbraided case the inverse reordering
/// a·x = x_(2) ⟨x_(1), S^{-1}(a_(2))⟩ a_(1) followed by the forward cross
/// relation must be the identity on every basis pair.
fn check_inverse_reordering(p: &DualPair, s: &SmashAlgebra) -> Result<()> {
    let a = &s.a;
    let h = &s.h;
    let (na, nh) = (a.dim, h.dim);
    let sinv = crate::linalg::invert(&a.antipode).ok_or(Error::SingularAntipode)?;
    for i in 0..na {
        for j in 0..nh {
            // y[s'][r'] = coefficient of e_{s'}·f^{r'} in f^i·e_j
            let mut y = zero_matrix(nh, na);
            for pp in 0..nh {
                for ss in 0..nh {
                    let dh = &h.comult[j][pp][ss];
                    if dh.is_zero() {
                        continue;
                    }
                    for r in 0..na {
                        for t in 0..na {
                            let da = &a.comult[i][r][t];
                            if da.is_zero() {
                                continue;
                            }
                            for u in 0..na {
                                let sv = &sinv[t][u];
                                if sv.is_zero() || p.pairing[pp][u].is_zero() {
                                    continue;
                                }
                                y[ss][r] =
                                    &y[ss][r] + &(&(&(dh * da) * sv) * &p.pairing[pp][u]);
                            }
                        }
                    }
                }
            }
            // Reorder back with the forward cross tensor.
            let mut back = zero_matrix(na, nh);
            for ss in 0..nh {
                for r in 0..na {
                    if y[ss][r].is_zero() {
                        continue;
                    }
                    for m in 0..na {
                        for n in 0..nh {
                            let x = &s.cross[ss][r][m][n];
                            if !x.is_zero() {
                                back[m][n] = &back[m][n] + &(&y[ss][r] * x);
                            }
                        }
                    }
                }
            }
            for m in 0..na {
                for n in 0..nh {
                    let expected = if m == i && n == j {
                        RatFunc::one()
                    } else {
                        RatFunc::zero()
                    };
                    if back[m][n] != expected {
                        return Err(Error::ConsistencyFailure(format!(
                            "inverse reordering of f^{i}·e_{j} is not involutive"
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}
