//! Hamiltonian cycles on tope graphs and their certificates.

mod dns;
mod fibers;
mod glue;
mod product;
mod search;
mod supersolvable;

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::TopeGraph;
use crate::tope::{adjacency, Tope};

pub use dns::{dns_cycle, DnsMethod, DnsOutcome};
pub use fibers::{fibers, Fiber};
pub use glue::{glue, Quadrilateral};
pub use product::product_cycle;
pub use search::{search_cycle, search_cycle_raw, SearchOutcome};
pub use supersolvable::{cycle_of_polygon, supersolvable_cycle, supersolvable_cycle_abstract};

/// A closed walk given by its first tope and the hyperplane flipped at each step.
/// The walk has as many steps as topes, the last step returning to `start`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamiltonCertificate {
    m: usize,
    start: Tope,
    flips: Vec<usize>,
}

impl HamiltonCertificate {
    pub fn new(m: usize, start: Tope, flips: Vec<usize>) -> Result<HamiltonCertificate> {
        if start.len() != m {
            return Err(Error::LengthMismatch(start.len(), m));
        }
        if let Some(&h) = flips.iter().find(|&&h| h >= m) {
            return Err(Error::IndexOutOfRange(h));
        }
        Ok(HamiltonCertificate { m, start, flips })
    }

    /// The certificate of the closed walk through `topes` in order.
    pub fn from_topes(m: usize, topes: &[Tope]) -> Result<HamiltonCertificate> {
        let first = topes.first().ok_or(Error::Empty)?;
        let mut flips = Vec::with_capacity(topes.len());
        for (k, t) in topes.iter().enumerate() {
            let next = &topes[(k + 1) % topes.len()];
            let h =
                adjacency(t, next)?.ok_or_else(|| Error::InvalidInput(format!("{t} and {next} are not adjacent")))?;
            flips.push(h);
        }
        HamiltonCertificate::new(m, first.clone(), flips)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn start(&self) -> &Tope {
        &self.start
    }

    pub fn flips(&self) -> &[usize] {
        &self.flips
    }

    pub fn len(&self) -> usize {
        self.flips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flips.is_empty()
    }

    /// The visited topes, `start` first; the closing step is not repeated.
    pub fn topes(&self) -> Vec<Tope> {
        let mut out = Vec::with_capacity(self.flips.len());
        let mut cur = self.start.clone();
        for &h in &self.flips {
            out.push(cur.clone());
            cur.flip_in_place(h);
        }
        out
    }
}

/// The first defect found in a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The walk does not end at its start.
    NotClosed {
        end: Tope,
    },
    RepeatedTope {
        step: usize,
        tope: Tope,
    },
    /// Step `step` flips a hyperplane that is not an edge of the graph there.
    NonEdgeStep {
        step: usize,
        from: Tope,
        flip: usize,
    },
    NotSpanning {
        visited: usize,
        total: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotClosed { end } => write!(f, "NotClosed: walk ends at {end}"),
            Violation::RepeatedTope { step, tope } => write!(f, "RepeatedTope: {tope} again at step {step}"),
            Violation::NonEdgeStep { step, from, flip } => {
                write!(f, "NonEdgeStep: step {step} flips {flip} at {from}")
            }
            Violation::NotSpanning { visited, total } => {
                write!(f, "NotSpanning: {visited} of {total} topes visited")
            }
        }
    }
}

impl Violation {
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::NotClosed { .. } => "NotClosed",
            Violation::RepeatedTope { .. } => "RepeatedTope",
            Violation::NonEdgeStep { .. } => "NonEdgeStep",
            Violation::NotSpanning { .. } => "NotSpanning",
        }
    }
}

/// Checks that the certificate is a Hamiltonian cycle of `g`.
pub fn verify_certificate(g: &TopeGraph, c: &HamiltonCertificate) -> std::result::Result<(), Violation> {
    let total = g.len();
    let Some(mut cur) = g.id(c.start()).filter(|_| c.m == g.m()) else {
        return Err(Violation::NonEdgeStep {
            step: 0,
            from: c.start.clone(),
            flip: c.flips.first().copied().unwrap_or(0),
        });
    };
    let start = cur;
    let mut seen: HashSet<usize> = HashSet::with_capacity(c.len());
    seen.insert(start);
    for (step, &h) in c.flips.iter().enumerate() {
        let next = g.neighbors(cur).iter().find(|&&(_, kind)| kind == h).map(|&(v, _)| v);
        let Some(next) = next else {
            return Err(Violation::NonEdgeStep {
                step,
                from: g.tope(cur).clone(),
                flip: h,
            });
        };
        cur = next;
        if step + 1 < c.len() && !seen.insert(cur) {
            return Err(Violation::RepeatedTope {
                step: step + 1,
                tope: g.tope(cur).clone(),
            });
        }
    }
    if cur != start {
        return Err(Violation::NotClosed {
            end: g.tope(cur).clone(),
        });
    }
    if seen.len() != total {
        return Err(Violation::NotSpanning {
            visited: seen.len(),
            total,
        });
    }
    Ok(())
}
