//! Per-precision constant tables shared across workers. Entries are
//! computed once and immutable afterwards; readers take the read lock only.

use super::gamma::bernoulli;
use super::Real;
use rug::{Complete, Float, Integer, Rational};
use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

type PrecMap = RwLock<HashMap<u32, Arc<Vec<Real>>>>;

static STIRLING: OnceLock<PrecMap> = OnceLock::new();
static ZETA_EM: OnceLock<PrecMap> = OnceLock::new();
static LN_TWO_PI: OnceLock<RwLock<HashMap<u32, Real>>> = OnceLock::new();
static EPS: OnceLock<RwLock<HashMap<(u32, u32), Real>>> = OnceLock::new();

const STIRLING_TERMS: usize = 160;
const ZETA_TERMS: usize = 214;

fn get_or_build(map: &PrecMap, prec: u32, build: impl FnOnce() -> Vec<Real>) -> Arc<Vec<Real>> {
    {
        let g = map.read().unwrap();
        if let Some(v) = g.get(&prec) {
            return v.clone();
        }
    }
    let built = Arc::new(build());
    let mut g = map.write().unwrap();
    g.entry(prec).or_insert(built).clone()
}

/// Stirling-series coefficients B_{2m} / (2m (2m-1)) for m = 1..=160.
pub fn stirling_coeffs(prec: u32) -> Arc<Vec<Real>> {
    let map = STIRLING.get_or_init(|| RwLock::new(HashMap::new()));
    get_or_build(map, prec, || {
        (1..=STIRLING_TERMS)
            .map(|m| {
                let b = bernoulli(2 * m);
                let q = Rational::from((
                    b.numer().clone(),
                    (b.denom() * &Integer::from(2 * m * (2 * m - 1))).complete(),
                ));
                Float::with_val(prec, &q)
            })
            .collect()
    })
}

/// Euler–Maclaurin coefficients B_{2j} / (2j)! for j = 1..=260.
pub fn zeta_em_coeffs(prec: u32) -> Arc<Vec<Real>> {
    let map = ZETA_EM.get_or_init(|| RwLock::new(HashMap::new()));
    get_or_build(map, prec, || {
        let mut fact = Integer::from(1);
        let mut out = Vec::with_capacity(ZETA_TERMS);
        for j in 1..=ZETA_TERMS {
            fact *= Integer::from((2 * j - 1) * (2 * j));
            let b = bernoulli(2 * j);
            let q = Rational::from((b.numer().clone(), (b.denom() * &fact).complete()));
            out.push(Float::with_val(prec, &q));
        }
        out
    })
}

/// ln(2 pi) at the given precision.
pub fn ln_two_pi(prec: u32) -> Real {
    let map = LN_TWO_PI.get_or_init(|| RwLock::new(HashMap::new()));
    {
        let g = map.read().unwrap();
        if let Some(v) = g.get(&prec) {
            return v.clone();
        }
    }
    let mut v = Float::with_val(prec, rug::float::Constant::Pi);
    v *= 2;
    let v = v.ln();
    let mut g = map.write().unwrap();
    g.entry(prec).or_insert(v).clone()
}

/// 10^(-digits) at the given precision.
pub fn eps(digits: u32, prec: u32) -> Real {
    let map = EPS.get_or_init(|| RwLock::new(HashMap::new()));
    {
        let g = map.read().unwrap();
        if let Some(v) = g.get(&(digits, prec)) {
            return v.clone();
        }
    }
    let mut e = Float::with_val(prec, 10);
    e.pow_assign(-(digits as i32));
    let mut g = map.write().unwrap();
    g.entry((digits, prec)).or_insert(e).clone()
}

use rug::ops::PowAssign;
