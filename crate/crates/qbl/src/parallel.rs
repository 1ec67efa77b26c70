//! Rayon-parallel submean probe.

use qbl_core::certify::{probe_site, InvariantFunction, ProbeParams, SubmeanReport};
use rayon::prelude::*;

/// Same report as [`qbl_core::certify::submean_probe`], with sites evaluated in
/// parallel. Sites are folded in index order, so the result is bit-identical.
pub fn par_submean_probe(f: &InvariantFunction<'_>, params: &ProbeParams) -> qbl_core::Result<SubmeanReport> {
    params.validate()?;
    let sites = (0..params.samples as u64)
        .into_par_iter()
        .map(|i| probe_site(f, params, i))
        .collect::<qbl_core::Result<Vec<_>>>()?;
    let mut report = SubmeanReport::empty(f.id(), params.radius);
    for site in sites {
        report.push(site);
    }
    Ok(report)
}
