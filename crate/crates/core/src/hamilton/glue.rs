use crate::error::{Error, Result};
use crate::tope::{adjacency, Tope};

use super::HamiltonCertificate;

/// A 4-cycle `u1 - v1 - v2 - u2 - u1` where `e1 = (u1, v1)` lies on the first
/// cycle, `e2 = (u2, v2)` on the second, and `f1 = (u1, u2)`, `f2 = (v1, v2)` cross.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quadrilateral {
    pub e1: (Tope, Tope),
    pub e2: (Tope, Tope),
}

impl Quadrilateral {
    pub fn f1(&self) -> (&Tope, &Tope) {
        (&self.e1.0, &self.e2.0)
    }

    pub fn f2(&self) -> (&Tope, &Tope) {
        (&self.e1.1, &self.e2.1)
    }

    fn check(&self) -> Result<()> {
        let pairs = [(&self.e1.0, &self.e1.1), (&self.e2.0, &self.e2.1), self.f1(), self.f2()];
        for (a, b) in pairs {
            if adjacency(a, b)?.is_none() {
                return Err(Error::InvalidInput(format!("{a} and {b} are not adjacent")));
            }
        }
        Ok(())
    }
}

/// The path through every tope of `cycle` from `from` to `to`, which must be
/// neighbours on the cycle; the edge between them is the one left out.
fn path_avoiding(cycle: &[Tope], from: &Tope, to: &Tope) -> Result<Vec<Tope>> {
    let n = cycle.len();
    let i = cycle.iter().position(|t| t == from).ok_or(Error::EdgeNotInCycle)?;
    if n >= 2 && &cycle[(i + n - 1) % n] == to {
        Ok((0..n).map(|k| cycle[(i + k) % n].clone()).collect())
    } else if n >= 2 && &cycle[(i + 1) % n] == to {
        Ok((0..n).map(|k| cycle[(i + n - k) % n].clone()).collect())
    } else {
        Err(Error::EdgeNotInCycle)
    }
}

/// Splices two vertex-disjoint cycles into one by exchanging `e1`, `e2` for the
/// crossing edges of `q`.
pub fn glue(c1: &HamiltonCertificate, c2: &HamiltonCertificate, q: &Quadrilateral) -> Result<HamiltonCertificate> {
    if c1.m() != c2.m() {
        return Err(Error::LengthMismatch(c1.m(), c2.m()));
    }
    q.check()?;
    let t1 = c1.topes();
    let t2 = c2.topes();
    // v1 ... u1 on the first cycle, then u2 ... v2 on the second
    let mut walk = path_avoiding(&t1, &q.e1.1, &q.e1.0)?;
    walk.extend(path_avoiding(&t2, &q.e2.0, &q.e2.1)?);
    HamiltonCertificate::from_topes(c1.m(), &walk)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::TopeGraph;
    use crate::hamilton::verify_certificate;

    fn t(s: &str) -> Tope {
        s.parse().unwrap()
    }

    fn face(prefix: char) -> HamiltonCertificate {
        let topes: Vec<Tope> = ["++", "+-", "--", "-+"]
            .iter()
            .map(|s| t(&format!("{prefix}{s}")))
            .collect();
        HamiltonCertificate::from_topes(3, &topes).unwrap()
    }

    #[test]
    fn cube_faces() {
        let cube = TopeGraph::from_topes(
            3,
            ["+++", "++-", "+-+", "+--", "-++", "-+-", "--+", "---"]
                .iter()
                .map(|s| t(s))
                .collect(),
        )
        .unwrap();
        let q = Quadrilateral {
            e1: (t("+++"), t("++-")),
            e2: (t("-++"), t("-+-")),
        };
        let c = glue(&face('+'), &face('-'), &q).unwrap();
        assert_eq!(c.len(), 8);
        assert_eq!(verify_certificate(&cube, &c), Ok(()));
    }

    #[test]
    fn edge_must_be_on_cycle() {
        let q = Quadrilateral {
            e1: (t("+++"), t("+--")),
            e2: (t("-++"), t("---")),
        };
        assert!(matches!(glue(&face('+'), &face('-'), &q), Err(Error::InvalidInput(_))));
        let swapped = Quadrilateral {
            e1: (t("-++"), t("-+-")),
            e2: (t("+++"), t("++-")),
        };
        assert!(matches!(
            glue(&face('+'), &face('-'), &swapped),
            Err(Error::EdgeNotInCycle)
        ));
    }
}
