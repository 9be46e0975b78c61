//! Canonical sample keys.
//!
//! `rm1;<ring>;<ideal>^<r>*<ideal>^<r>...` where `<ring>` is `poly(d)` or
//! `sg(a,b,...)`, each `<ideal>` is its canonical generator list and factors
//! with `r = 0` are dropped. Equal ideals are merged by adding exponents and
//! factors are sorted, so the key only depends on the product ideal's
//! factorization, not on the order in which it was requested.

use std::sync::Arc;

use crate::lattice::{make_ring, Monomial, MonomialIdeal, Ring, RingSpec};

pub const CACHE_FORMAT_TAG: &str = "rm1";

pub fn sample_key(ring: &Ring, factors: &[(String, u32)]) -> String {
    let mut merged: Vec<(String, u32)> = Vec::new();
    let mut sorted: Vec<&(String, u32)> = factors.iter().filter(|(_, r)| *r > 0).collect();
    sorted.sort();
    for (ideal, r) in sorted {
        match merged.last_mut() {
            Some((last, acc)) if last == ideal => *acc += r,
            _ => merged.push((ideal.clone(), *r)),
        }
    }
    let body: Vec<String> = merged.iter().map(|(i, r)| format!("{i}^{r}")).collect();
    format!("{CACHE_FORMAT_TAG};{};{}", ring.key(), body.join("*"))
}

/// A parsed key: enough to recompute its value from scratch.
#[derive(Debug, Clone)]
pub struct SampleKey {
    pub ring: Arc<Ring>,
    pub factors: Vec<(MonomialIdeal, u32)>,
}

pub fn parse_sample_key(key: &str) -> Result<SampleKey, String> {
    let mut parts = key.splitn(3, ';');
    let (tag, ring, body) = match (parts.next(), parts.next(), parts.next()) {
        (Some(t), Some(r), Some(b)) => (t, r, b),
        _ => return Err("expected three ';'-separated fields".into()),
    };
    if tag != CACHE_FORMAT_TAG {
        return Err(format!("unknown format tag {tag:?}"));
    }
    let ring = make_ring(&parse_ring(ring)?).map_err(|e| e.to_string())?;
    let mut factors = Vec::new();
    if !body.is_empty() {
        for f in body.split('*') {
            let (gens, r) = f.rsplit_once('^').ok_or_else(|| format!("factor {f:?} lacks '^'"))?;
            let r: u32 = r.parse().map_err(|_| format!("bad exponent in {f:?}"))?;
            let gens = gens
                .strip_prefix('[')
                .and_then(|g| g.strip_suffix(']'))
                .ok_or_else(|| format!("factor {f:?} lacks brackets"))?;
            let monos = if ring.semigroup().is_some() {
                parse_nats(gens)?.into_iter().map(Monomial::value).collect()
            } else {
                let inner = gens
                    .strip_prefix('(')
                    .and_then(|g| g.strip_suffix(')'))
                    .ok_or_else(|| format!("bad exponent vectors in {f:?}"))?;
                inner
                    .split("),(")
                    .map(|v| parse_nats(v).map(Monomial::new))
                    .collect::<Result<Vec<_>, _>>()?
            };
            let ideal = MonomialIdeal::from_gens(&ring, monos).map_err(|e| e.to_string())?;
            factors.push((ideal, r));
        }
    }
    Ok(SampleKey { ring, factors })
}

fn parse_ring(s: &str) -> Result<RingSpec, String> {
    let inner = |p: &str| s.strip_prefix(p).and_then(|r| r.strip_suffix(')'));
    if let Some(d) = inner("poly(") {
        return d.parse().map(RingSpec::PolynomialLocal).map_err(|_| format!("bad ring {s:?}"));
    }
    if let Some(g) = inner("sg(") {
        return parse_nats(g).map(RingSpec::NumericalSemigroup);
    }
    Err(format!("unknown ring descriptor {s:?}"))
}

fn parse_nats(s: &str) -> Result<Vec<u32>, String> {
    s.split(',').map(|t| t.parse::<u32>().map_err(|_| format!("bad integer {t:?}"))).collect()
}
