use crate::error::{Error, Result};
use crate::graph::TopeGraph;

use super::{verify_certificate, HamiltonCertificate};

/// Hamiltonian cycle of the product graph: the first factor's cycle is walked once,
/// and at each of its topes the second factor's cycle is traversed alternately
/// forwards and backwards.
pub fn product_cycle(
    g1: &TopeGraph,
    c1: &HamiltonCertificate,
    g2: &TopeGraph,
    c2: &HamiltonCertificate,
) -> Result<HamiltonCertificate> {
    for (g, c) in [(g1, c1), (g2, c2)] {
        verify_certificate(g, c).map_err(|v| Error::InvalidInput(format!("factor certificate: {v}")))?;
    }
    let a = c1.topes();
    let b = c2.topes();
    let mut out = Vec::with_capacity(a.len() * b.len());
    for (i, ai) in a.iter().enumerate() {
        if i % 2 == 0 {
            out.extend(b.iter().map(|bj| ai.concat(bj)));
        } else {
            out.extend(b.iter().rev().map(|bj| ai.concat(bj)));
        }
    }
    HamiltonCertificate::from_topes(g1.m() + g2.m(), &out)
}
