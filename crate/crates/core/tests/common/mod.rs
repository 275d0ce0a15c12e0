//! Independent oracles and generators shared by integration suites.
#![allow(dead_code)]

use inktok::{GridPoint, IntegerInk};
use num_rational::Ratio;
use rand::Rng;

/// Cells of the segment `p -> q` from the closed form: along the major axis
/// the minor coordinate after `i` steps is `i * minor / major` rounded to the
/// nearest integer with exact halves rounded toward the start.
pub fn raster_closed_form(p: (i64, i64), q: (i64, i64)) -> Vec<(i64, i64)> {
    let (dx, dy) = (q.0 - p.0, q.1 - p.1);
    let (ax, ay) = (dx.abs(), dy.abs());
    let (major, minor) = (ax.max(ay), ax.min(ay));
    (0..=major)
        .map(|i| {
            let m = if major == 0 {
                0
            } else {
                (2 * i * minor + major - 1).div_euclid(2 * major)
            };
            let (ox, oy) = if ax >= ay { (i, m) } else { (m, i) };
            (p.0 + dx.signum() * ox, p.1 + dy.signum() * oy)
        })
        .collect()
}

/// Distance from `cell` to the segment `p -> q`, estimated from `samples`
/// evenly spaced points on the segment.
pub fn supersampled_distance(p: (i64, i64), q: (i64, i64), cell: (i64, i64), samples: usize) -> f64 {
    let (px, py, qx, qy) = (p.0 as f64, p.1 as f64, q.0 as f64, q.1 as f64);
    (0..=samples)
        .map(|s| {
            let t = s as f64 / samples as f64;
            let (x, y) = (px + t * (qx - px), py + t * (qy - py));
            ((x - cell.0 as f64).powi(2) + (y - cell.1 as f64).powi(2)).sqrt()
        })
        .fold(f64::INFINITY, f64::min)
}

type Q = Ratio<i128>;

/// Savitzky-Golay coefficient for output index `t` and input index `j` of a
/// window of `w` samples with polynomial order `k`, solved exactly from the
/// normal equations `(A^T A) c = A^T e_j`.
pub fn savgol_weight_exact(w: usize, k: usize, t: usize, j: usize) -> Q {
    let half = (w / 2) as i128;
    let a: Vec<Vec<Q>> = (0..w)
        .map(|r| {
            (0..=k)
                .map(|c| Q::from_integer((r as i128 - half).pow(c as u32)))
                .collect()
        })
        .collect();
    let n = k + 1;
    let mut m: Vec<Vec<Q>> = (0..n)
        .map(|r| {
            let mut row: Vec<Q> = (0..n).map(|c| (0..w).map(|i| a[i][r] * a[i][c]).sum()).collect();
            row.push(a[j][r]);
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| m[r][col] != Q::from_integer(0))
            .expect("nonsingular");
        m.swap(col, pivot);
        let pv = m[col][col];
        for v in m[col].iter_mut() {
            *v /= pv;
        }
        for r in 0..n {
            if r != col {
                let f = m[r][col];
                let pivot_row = m[col].clone();
                for (v, pr) in m[r].iter_mut().zip(pivot_row) {
                    *v -= f * pr;
                }
            }
        }
    }
    (0..n).map(|c| a[t][c] * m[c][n]).sum()
}

pub fn to_f64(q: Q) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// A random integer ink: up to `max_strokes` strokes of up to `max_points`
/// points within `±extent`, with occasional repeated points.
pub fn random_integer_ink<R: Rng>(rng: &mut R, max_strokes: usize, max_points: usize, extent: i32) -> IntegerInk {
    let strokes = (0..rng.gen_range(1..=max_strokes))
        .map(|_| {
            let mut pts: Vec<GridPoint> = Vec::new();
            for _ in 0..rng.gen_range(1..=max_points) {
                let p = match pts.last() {
                    Some(&last) if rng.gen_bool(0.1) => last,
                    _ => GridPoint::new(rng.gen_range(-extent..=extent), rng.gen_range(-extent..=extent)),
                };
                pts.push(p);
            }
            pts
        })
        .collect();
    IntegerInk::new(strokes).unwrap()
}

/// A pen-like random walk sampled as raw coordinates, so that distinct inks
/// share local shapes but not absolute positions.
pub fn random_walk_ink<R: Rng>(rng: &mut R, strokes: usize, points: usize) -> inktok::RawInk {
    let mut x: f64 = rng.gen_range(0.0..500.0);
    let mut y: f64 = rng.gen_range(0.0..500.0);
    let mut heading: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let raw: Vec<Vec<(f64, f64)>> = (0..strokes)
        .map(|_| {
            x += rng.gen_range(5.0..40.0);
            y += rng.gen_range(-20.0..20.0);
            (0..points)
                .map(|_| {
                    heading += rng.gen_range(-0.6..0.6);
                    let speed = rng.gen_range(2.0..9.0);
                    x += speed * heading.cos();
                    y += speed * heading.sin();
                    (x, y)
                })
                .collect()
        })
        .collect();
    inktok::RawInk::from_tuples(raw).unwrap()
}
