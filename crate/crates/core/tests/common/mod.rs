//! Independent oracles: literal re-implementations of the reference MATLAB
//! scripts, plus brute-force helpers. Nothing here calls into the library's
//! numerical code.
#![allow(dead_code)]

pub const H: f64 = 6.6261e-34;
pub const C: f64 = 2.9979e8;
pub const K: f64 = 1.3807e-23;

/// MATLAB `a:step:b`.
pub fn colon(a: f64, step: f64, b: f64) -> Vec<f64> {
    let n = ((b - a) / step + 1e-10).floor() as usize + 1;
    (0..n).map(|i| a + i as f64 * step).collect()
}

/// `quantum.*(1./(exp(A)-1))` from the Planck curve script.
pub fn script1_curve(lambda: &[f64], t: f64) -> Vec<f64> {
    let pi = std::f64::consts::PI;
    let mut out = Vec::with_capacity(lambda.len());
    for &l in lambda {
        let a = (H * C) / (K * t * l);
        let quantum = (8.0 * pi * H * C) / (l * l * l * l * l);
        out.push(quantum * (1.0 / (a.exp() - 1.0)));
    }
    out
}

/// The spiking-potential script: 300 zeros then one `sgn` block per
/// temperature of `4500:500:7500`.
pub fn script2_spike(lambda_tyke: &[f64], temps: &[f64]) -> Vec<f64> {
    let pi = std::f64::consts::PI;
    let qu: Vec<f64> = lambda_tyke
        .iter()
        .map(|&l| (8.0 * pi * H * C) / (l * l * l * l * l))
        .collect();
    let mut spike = vec![0.0; lambda_tyke.len()];
    for &ii in temps {
        for (j, &l) in lambda_tyke.iter().enumerate() {
            let ai = (H * C) / (K * ii * l);
            spike.push(qu[j] * (1.0 / (ai.exp() - 1.0)));
        }
    }
    spike
}

pub fn rel_close(a: f64, b: f64, rel: f64) -> bool {
    a == b || (a - b).abs() <= rel * a.abs().max(b.abs())
}

/// Brute-force argmax index.
pub fn argmax(v: &[f64]) -> usize {
    let mut best = 0;
    for i in 1..v.len() {
        if v[i] > v[best] {
            best = i;
        }
    }
    best
}

/// Leading zeros allowed, then strictly up to one peak, then strictly down.
pub fn is_unimodal(v: &[f64]) -> bool {
    let start = v.iter().position(|&x| x > 0.0).unwrap_or(v.len());
    let body = &v[start..];
    if body.is_empty() {
        return false;
    }
    let peak = argmax(body);
    body[..=peak].windows(2).all(|w| w[1] > w[0]) && body[peak..].windows(2).all(|w| w[1] < w[0])
}
