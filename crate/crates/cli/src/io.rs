//! File formats and the phase-polynomial expression grammar.
//!
//! Functions travel as `{"group": "2x3", "values": [[re, im], ...]}` with
//! values in mixed-radix order (last factor fastest). Lattices travel as
//! `{"k": 3, "generators": [[1, -2, 1]], "signature": [0, 0, 0]}` with the
//! signature optional. Polynomial expressions are sums of integer-coefficient
//! monomials in x: "x^2", "2x^3+x", "3".

use gowers_core::function::GroupFunction;
use gowers_core::group::GroupSpec;
use gowers_core::lattice::{IntLattice, Signature};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::Path;

use crate::Malformed;

#[derive(Debug, Serialize, Deserialize)]
pub struct FunctionFile {
    pub group: String,
    pub values: Vec<[f64; 2]>,
}

#[derive(Debug, Deserialize)]
pub struct LatticeFile {
    pub k: usize,
    pub generators: Vec<Vec<i64>>,
    #[serde(default)]
    pub signature: Option<Vec<u8>>,
}

fn read_text(path: &Path) -> Result<String, Malformed> {
    fs::read_to_string(path)
        .map_err(|e| Malformed(format!("cannot read {}: {e}", path.display())))
}

pub fn load_function(path: &Path) -> Result<GroupFunction, Malformed> {
    let text = read_text(path)?;
    let file: FunctionFile = serde_json::from_str(&text)
        .map_err(|e| Malformed(format!("{}: {e}", path.display())))?;
    function_from_file(&file).map_err(|e| Malformed(format!("{}: {e}", path.display())))
}

pub fn function_from_file(file: &FunctionFile) -> Result<GroupFunction, String> {
    let spec: GroupSpec = file.group.parse().map_err(|e| format!("{e}"))?;
    let values: Vec<Complex64> =
        file.values.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
    GroupFunction::new(spec, values).map_err(|e| format!("{e}"))
}

/// A cube of 2^d functions: a JSON array of function objects over one group.
pub fn load_function_cube(path: &Path, d: usize) -> Result<Vec<GroupFunction>, Malformed> {
    let text = read_text(path)?;
    let files: Vec<FunctionFile> = serde_json::from_str(&text)
        .map_err(|e| Malformed(format!("{}: {e}", path.display())))?;
    if files.len() != 1 << d {
        return Err(Malformed(format!(
            "{}: expected {} functions for d={d}, found {}",
            path.display(),
            1usize << d,
            files.len()
        )));
    }
    files
        .iter()
        .map(|f| function_from_file(f).map_err(|e| Malformed(format!("{}: {e}", path.display()))))
        .collect()
}

pub fn load_lattice(path: &Path) -> Result<(IntLattice, Signature), Malformed> {
    let text = read_text(path)?;
    let file: LatticeFile = serde_json::from_str(&text)
        .map_err(|e| Malformed(format!("{}: {e}", path.display())))?;
    let lattice = IntLattice::new(file.k, file.generators)
        .map_err(|e| Malformed(format!("{}: {e}", path.display())))?;
    let signature = match file.signature {
        Some(bits) => Signature::new(bits)
            .map_err(|e| Malformed(format!("{}: {e}", path.display())))?,
        None => Signature::zeros(file.k),
    };
    if signature.len() != file.k {
        return Err(Malformed(format!(
            "{}: signature length {} does not match k={}",
            path.display(),
            signature.len(),
            file.k
        )));
    }
    Ok((lattice, signature))
}

/// Ascending coefficients of an integer polynomial in x. Grammar: one or
/// more '+'-separated terms, each an integer, "x", or "[coef]x^power".
pub fn parse_phase_poly(expr: &str) -> Result<Vec<i64>, Malformed> {
    let bad = |reason: &str| Malformed(format!("polynomial {expr:?}: {reason}"));
    let mut coeffs: Vec<i64> = Vec::new();
    if expr.trim().is_empty() {
        return Err(bad("empty expression"));
    }
    for raw in expr.split('+') {
        let term = raw.trim();
        if term.is_empty() {
            return Err(bad("empty term"));
        }
        let (coef_text, power) = match term.find('x') {
            None => (term, 0usize),
            Some(ix) => {
                let rest = term[ix + 1..].trim_start();
                let power = if rest.is_empty() {
                    1
                } else if let Some(p) = rest.strip_prefix('^') {
                    p.trim().parse::<usize>().map_err(|_| bad("bad exponent"))?
                } else {
                    return Err(bad("expected ^ after x"));
                };
                (&term[..ix], power)
            }
        };
        if power > 64 {
            return Err(bad("exponent too large"));
        }
        let coef_text = coef_text.trim();
        let coef: i64 = if coef_text.is_empty() {
            1
        } else {
            coef_text.parse().map_err(|_| bad("bad coefficient"))?
        };
        if coeffs.len() <= power {
            coeffs.resize(power + 1, 0);
        }
        coeffs[power] += coef;
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_grammar() {
        assert_eq!(parse_phase_poly("x^2").unwrap(), vec![0, 0, 1]);
        assert_eq!(parse_phase_poly("2x^3+x").unwrap(), vec![0, 1, 0, 2]);
        assert_eq!(parse_phase_poly("3").unwrap(), vec![3]);
        assert_eq!(parse_phase_poly("x").unwrap(), vec![0, 1]);
        assert_eq!(parse_phase_poly(" 5x ^2 ").unwrap(), vec![0, 0, 5]);
        assert_eq!(parse_phase_poly("x+x").unwrap(), vec![0, 2]);
        assert_eq!(parse_phase_poly("-2x").unwrap(), vec![0, -2]);
    }

    #[test]
    fn polynomial_grammar_rejects() {
        assert!(parse_phase_poly("").is_err());
        assert!(parse_phase_poly("x^").is_err());
        assert!(parse_phase_poly("x2").is_err());
        assert!(parse_phase_poly("y^2").is_err());
        assert!(parse_phase_poly("x^2+").is_err());
        assert!(parse_phase_poly("x^999").is_err());
    }
}
