//! The builtin example library. Each builtin is delivered as `.hopf`
//! source text — either a fixed string or text generated from the direct
//! tensor constructions — so the parser and compiler are on the path for
//! every builtin.

use super::emit::{ast_from_hopf, emit_source};
use super::parse::parse;
use super::{AlgebraAst, CrossRule, MixedTerm, PresentationAst, TensorTerm, WordTensor};
use crate::braided::qplane::build_q_fermionic_plane;
use crate::braided::BraidedHopfData;
use crate::error::{Error, Result};
use crate::smash::SmashAlgebra;

const DQS_SRC: &str = "\
algebra dqs
generators x y
relations
  x^2 = 0
  y*x = x - x*y
  y^2 = y
basis 1 x y x*y
coproduct
  x -> x(*)1 + 1(*)x - 2*y(*)x
  y -> y(*)1 + 1(*)y - 2*y(*)y
counit
  x -> 0
  y -> 0
antipode
  x -> x - 2*x*y
  y -> y
";

const FERMIONIC_LINE_SRC: &str = "\
algebra ferm_A
generators xi
relations
  xi^2 = 0
basis 1 xi
coproduct
  xi -> xi(*)1 + 1(*)xi
counit
  xi -> 0
antipode
  xi -> -xi
braiding
  xi(*)xi -> -xi(*)xi
dual
algebra ferm_H
generators sigma
relations
  sigma^2 = 0
basis 1 sigma
coproduct
  sigma -> sigma(*)1 + 1(*)sigma
counit
  sigma -> 0
antipode
  sigma -> -sigma
braiding
  sigma(*)sigma -> -sigma(*)sigma
end
smash
  sigma*xi -> 1 - xi*sigma
end
";

fn cyclic_source(n: usize) -> String {
    let basis: Vec<String> = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{i}"),
        })
        .collect();
    let s_gen = if n == 1 {
        "1".to_string()
    } else if n == 2 {
        "g".to_string()
    } else {
        format!("g^{}", n - 1)
    };
    format!(
        "algebra C{n}\ngenerators g\nrelations\n  g^{n} = 1\nbasis {}\n\
         coproduct\n  g -> g(*)g\ncounit\n  g -> 1\nantipode\n  g -> {s_gen}\n",
        basis.join(" ")
    )
}

fn dqs_dual_source() -> Result<String> {
    let c = super::compile(&parse(DQS_SRC)?)?;
    let pair = crate::duality::dualize_with_labels(
        &c.hopf,
        "dqs_dual".into(),
        ["1", "a", "b", "a*b"].iter().map(|s| s.to_string()).collect(),
    )?;
    Ok(emit_source(&PresentationAst {
        algebra: ast_from_hopf(&pair.functions)?,
        dual: None,
        pairing: Vec::new(),
        cross: Vec::new(),
    }))
}

/// Restricts a full braiding tensor to the generator pairs of a derived
/// presentation.
fn braiding_table(b: &BraidedHopfData, ast: &AlgebraAst) -> Result<Vec<Vec<Option<WordTensor>>>> {
    let ng = ast.generators.len();
    let gen_basis: Vec<usize> = (0..ng)
        .map(|g| {
            ast.basis.iter().position(|w| w[..] == [g]).ok_or_else(|| {
                Error::ConsistencyFailure(format!(
                    "generator `{}` is not a basis word",
                    ast.generators[g]
                ))
            })
        })
        .collect::<Result<_>>()?;
    let mut table = vec![vec![None; ng]; ng];
    for i in 0..ng {
        for j in 0..ng {
            let m = &b.braiding.psi[gen_basis[i]][gen_basis[j]];
            let mut terms = Vec::new();
            for (k, row) in m.iter().enumerate() {
                for (l, c) in row.iter().enumerate() {
                    if !c.is_zero() {
                        terms.push(TensorTerm {
                            coeff: c.clone(),
                            left: ast.basis[k].clone(),
                            right: ast.basis[l].clone(),
                        });
                    }
                }
            }
            table[i][j] = Some(terms);
        }
    }
    Ok(table)
}

/// Reads the generator-pair cross rules off a smash product's tensor.
fn cross_rules(
    s: &SmashAlgebra,
    a: &AlgebraAst,
    h: &AlgebraAst,
) -> Result<Vec<CrossRule>> {
    let find = |ast: &AlgebraAst, g: usize| -> Result<usize> {
        ast.basis.iter().position(|w| w[..] == [g]).ok_or_else(|| {
            Error::ConsistencyFailure(format!(
                "generator `{}` is not a basis word",
                ast.generators[g]
            ))
        })
    };
    let mut out = Vec::new();
    for hg in 0..h.generators.len() {
        let bj = find(h, hg)?;
        for ag in 0..a.generators.len() {
            let bi = find(a, ag)?;
            let m = &s.cross[bj][bi];
            let mut rhs = Vec::new();
            for (r, row) in m.iter().enumerate() {
                for (sj, c) in row.iter().enumerate() {
                    if !c.is_zero() {
                        rhs.push(MixedTerm {
                            coeff: c.clone(),
                            a_word: a.basis[r].clone(),
                            h_word: h.basis[sj].clone(),
                        });
                    }
                }
            }
            out.push(CrossRule { h_gen: hg, a_gen: ag, rhs });
        }
    }
    Ok(out)
}

fn qplane_source(n: usize) -> Result<String> {
    let (pair, smash) = build_q_fermionic_plane(n)?;
    let mut a = ast_from_hopf(&pair.a.base)?;
    a.name = format!("qplane_A_{n}");
    a.uses_q = true;
    a.braiding = Some(braiding_table(&pair.a, &a)?);
    let mut h = ast_from_hopf(&pair.h.base)?;
    h.name = format!("qplane_H_{n}");
    h.uses_q = true;
    h.braiding = Some(braiding_table(&pair.h, &h)?);
    let cross = cross_rules(&smash, &a, &h)?;
    Ok(emit_source(&PresentationAst {
        algebra: a,
        dual: Some(h),
        pairing: Vec::new(),
        cross,
    }))
}

/// Canonical `.hopf` source for a builtin. `cyclic-group` and `q-plane`
/// require the numeric parameter; the others reject one.
pub fn builtin_source(name: &str, param: Option<usize>) -> Result<String> {
    let need = |p: Option<usize>| -> Result<usize> {
        match p {
            Some(n) if n >= 1 => Ok(n),
            Some(n) => Err(Error::BadParam(format!("`{name}` needs a parameter >= 1, got {n}"))),
            None => Err(Error::BadParam(format!("`{name}` needs a numeric parameter"))),
        }
    };
    let none = |src: Result<String>| -> Result<String> {
        match param {
            Some(_) => Err(Error::BadParam(format!("`{name}` takes no parameter"))),
            None => src,
        }
    };
    match name {
        "cyclic-group" => Ok(cyclic_source(need(param)?)),
        "dqs" => none(Ok(DQS_SRC.to_string())),
        "dqs-dual" => none(dqs_dual_source()),
        "fermionic-line" => none(Ok(FERMIONIC_LINE_SRC.to_string())),
        "q-plane" => qplane_source(need(param)?),
        _ => Err(Error::UnknownBuiltin(name.to_string())),
    }
}

/// Parsed presentation of a builtin.
pub fn builtin(name: &str, param: Option<usize>) -> Result<PresentationAst> {
    parse(&builtin_source(name, param)?)
}
