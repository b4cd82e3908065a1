//! Browser bindings: count curves, explore the quadrilateral counts, and
//! view the subdivision and curve of a random lift.
//!
//! Every export takes and returns plain strings or numbers; results are JSON.
//! The `*_json` functions hold the logic and are usable outside the browser.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use tropcount::count::{count_random, CountOptions};
use tropcount::curve::corner_locus;
use tropcount::curve::TropicalPolynomial;
use tropcount::io;
use tropcount::quadcusp::{
    binomial_oracle, count_adjacent, count_opposite, eta_xi, EdgePair, NormalQuadrilateral,
};
use tropcount::rational::{int, to_string, RationalPoint};
use tropcount::Result;
use wasm_bindgen::prelude::*;

/// Configurations tried before giving up on a seed.
const RETRIES: u32 = 16;

#[derive(Serialize)]
struct CurveView {
    weight: u64,
    svg: String,
}

#[derive(Serialize)]
struct CountView {
    mode: String,
    points: Vec<RationalPoint>,
    total: u64,
    curves: Vec<CurveView>,
}

pub fn count_json(polygon: &str, mode: &str, seed: u64) -> Result<String> {
    let delta = io::polygon_from_json(polygon)?;
    let mode = io::parse_mode(mode)?;
    let r = count_random(&delta, mode, seed, RETRIES, CountOptions::default())?;
    let view = CountView {
        mode: mode.to_string(),
        points: r.points.clone(),
        total: r.total,
        curves: r
            .curves
            .iter()
            .map(|c| CurveView {
                weight: c.weight,
                svg: io::curve_svg(&c.curve, &r.points),
            })
            .collect(),
    };
    Ok(serde_json::to_string(&view)?)
}

#[derive(Serialize)]
struct QuadView {
    eta: String,
    xi: String,
    adjacent: u64,
    opposite: u64,
    oracle_adjacent: u64,
    oracle_opposite: u64,
    svg: String,
}

pub fn quad_json(m: i64, p: i64, q: i64, r: i64, s: i64) -> Result<String> {
    let quad = NormalQuadrilateral::new(m, p, q, r, s)?;
    let c = eta_xi(&quad)?;
    let poly = quad.polygon();
    let sub = tropcount::subdivision::Subdivision::new(poly.clone(), vec![poly])?;
    let view = QuadView {
        eta: to_string(&c.eta),
        xi: to_string(&c.xi),
        adjacent: count_adjacent(&quad),
        opposite: count_opposite(&quad),
        oracle_adjacent: binomial_oracle(&quad, EdgePair::Adjacent)?,
        oracle_opposite: binomial_oracle(&quad, EdgePair::Opposite)?,
        svg: io::subdivision_svg(&sub),
    };
    Ok(serde_json::to_string(&view)?)
}

#[derive(Serialize)]
struct LiftView {
    /// `[x, y, height]` per lattice point.
    heights: Vec<(i64, i64, i64)>,
    cells: usize,
    svg: String,
}

/// Random integer heights in `0..=max_height` on the lattice points, and the
/// tropical curve of the resulting lower hull.
pub fn lift_json(polygon: &str, seed: u64, max_height: i64) -> Result<String> {
    let delta = io::polygon_from_json(polygon)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let heights: Vec<(i64, i64, i64)> = delta
        .lattice_points()
        .into_iter()
        .map(|p| (p.x, p.y, rng.gen_range(0..=max_height.max(0))))
        .collect();
    let coeffs: BTreeMap<_, _> = heights
        .iter()
        .map(|&(x, y, h)| ((x, y).into(), int(-h)))
        .collect();
    let curve = corner_locus(&TropicalPolynomial::new(coeffs)?)?;
    Ok(serde_json::to_string(&LiftView {
        cells: curve.subdivision().cells().len(),
        svg: io::curve_svg(&curve, &[]),
        heights,
    })?)
}

fn js<T>(r: Result<T>) -> std::result::Result<T, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn count(polygon: &str, mode: &str, seed: u32) -> std::result::Result<String, JsError> {
    js(count_json(polygon, mode, seed as u64))
}

#[wasm_bindgen]
pub fn quadrilateral(m: i32, p: i32, q: i32, r: i32, s: i32) -> std::result::Result<String, JsError> {
    js(quad_json(m as i64, p as i64, q as i64, r as i64, s as i64))
}

#[wasm_bindgen]
pub fn random_lift(polygon: &str, seed: u32, max_height: i32) -> std::result::Result<String, JsError> {
    js(lift_json(polygon, seed as u64, max_height as i64))
}
