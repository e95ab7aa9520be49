//! Element expressions: `[n:] polynomial`.
//!
//! Without a dimension-vector prefix, `n_i` is the largest slot of `z[i,_]`
//! that occurs; a constant over a one-vertex quiver lives in `V_(1)`.

use coha_core::poly::text::parse_polynomial;
use coha_core::{DimVec, QElement, QKernel, ShuffleElement, Var};

use crate::CliError;

pub fn parse_dim(k: &QKernel, s: &str) -> Result<DimVec, CliError> {
    let n: DimVec = s.parse().map_err(|e| CliError::Parse(format!("dimension vector {s:?}: {e}")))?;
    if n.len() != k.vertex_count() {
        return Err(CliError::Parse(format!(
            "dimension vector {n} has {} entries but the quiver has {} vertices",
            n.len(),
            k.vertex_count()
        )));
    }
    Ok(n)
}

pub fn parse_element(k: &QKernel, s: &str) -> Result<QElement, CliError> {
    let (prefix, body) = match s.split_once(':') {
        Some((a, b)) => (Some(a), b),
        None => (None, s),
    };
    let poly = parse_polynomial(body).map_err(|e| CliError::Parse(format!("expression {:?}: {e}", body.trim())))?;
    let known = k.params();
    let nv = k.vertex_count();
    let mut inferred = vec![0u32; nv];
    for v in poly.variables() {
        match v {
            Var::Z { vertex, slot } => {
                let i = vertex as usize;
                if i >= nv {
                    return Err(CliError::Parse(format!("{v} refers to vertex {} but the quiver has {nv}", i + 1)));
                }
                inferred[i] = inferred[i].max(slot as u32);
            }
            Var::Param(s) if known.contains(&s) => {}
            Var::Param(s) => {
                let names: Vec<&str> = known.iter().map(|p| p.as_str()).collect();
                return Err(CliError::Parse(format!(
                    "unknown parameter {:?}; this kernel has [{}]",
                    s.as_str(),
                    names.join(", ")
                )));
            }
            other => return Err(CliError::Parse(format!("variable {other} is not allowed in an element"))),
        }
    }
    let n = match prefix {
        Some(p) => parse_dim(k, p)?,
        None if inferred.iter().all(|&x| x == 0) => {
            if nv != 1 {
                return Err(CliError::Parse(format!(
                    "cannot infer the dimension vector of {:?}; prefix it as `(n): ...`",
                    body.trim()
                )));
            }
            DimVec::new(vec![1])
        }
        None => DimVec::new(inferred),
    };
    ShuffleElement::new(n, poly).map_err(|e| CliError::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use coha_core::catalog;

    #[test]
    fn inference() {
        let k = catalog::jordan();
        let e = parse_element(&k, "z[1,1]+z[1,2]").unwrap();
        assert_eq!(e.n(), &DimVec::new(vec![2]));
        let e = parse_element(&k, "1").unwrap();
        assert_eq!(e.n(), &DimVec::new(vec![1]));
        let e = parse_element(&k, "(3): u_a").unwrap();
        assert_eq!(e.n(), &DimVec::new(vec![3]));
    }

    #[test]
    fn rejections() {
        let k = catalog::jordan();
        assert!(parse_element(&k, "z[1,1]").is_ok());
        assert!(parse_element(&k, "z[1,1]^2+z[1,2]").is_err());
        assert!(parse_element(&k, "t*z[1,1]").is_err());
        assert!(parse_element(&k, "x").is_err());
        assert!(parse_element(&k, "z[2,1]").is_err());
        assert!(parse_element(&k, "(1,1): 1").is_err());
        assert!(parse_element(&catalog::symmetric_a2(), "1").is_err());
        assert!(parse_element(&catalog::symmetric_a2(), "(1,1): z[1,1]*z[2,1]").is_ok());
    }

    #[test]
    fn display_round_trip() {
        let k = catalog::symmetric_a2();
        let e = parse_element(&k, "(1,2): u_a*z[1,1] + z[2,1]*z[2,2] - 3/2").unwrap();
        assert_eq!(parse_element(&k, &e.to_string()).unwrap(), e);
    }
}
