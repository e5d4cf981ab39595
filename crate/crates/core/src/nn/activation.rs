//! Sigmoid and tanh over slices, built on a branch-free `exp` that the
//! compiler can vectorize. The same arithmetic runs on every code path, so
//! results do not depend on which instruction set is selected.

const LOG2E: f64 = std::f64::consts::LOG2_E;
// ln 2 split so that `n·LN2_HI` is exact for |n| < 2^20.
const LN2_HI: f64 = 6.931_471_803_691_238_164_90e-1;
const LN2_LO: f64 = 1.908_214_929_270_587_700_02e-10;
// Adding 1.5·2^52 rounds to an integer held in the low mantissa bits.
const SHIFTER: f64 = 6_755_399_441_055_744.0;

/// 1/k! for k = 12 down to 2.
const INV_FACT: [f64; 11] = [
    1.0 / 479_001_600.0,
    1.0 / 39_916_800.0,
    1.0 / 3_628_800.0,
    1.0 / 362_880.0,
    1.0 / 40_320.0,
    1.0 / 5_040.0,
    1.0 / 720.0,
    1.0 / 120.0,
    1.0 / 24.0,
    1.0 / 6.0,
    1.0 / 2.0,
];

#[inline(always)]
fn exp_core(x: f64) -> f64 {
    let x = x.max(-708.0).min(709.0);
    let t = x * LOG2E + SHIFTER;
    let n = t - SHIFTER;
    let r = (x - n * LN2_HI) - n * LN2_LO;
    let mut p = INV_FACT[0];
    for c in &INV_FACT[1..] {
        p = p * r + c;
    }
    p = p * r + 1.0;
    p = p * r + 1.0;
    let k = t.to_bits().wrapping_sub(SHIFTER.to_bits()) as i64;
    p * f64::from_bits(((k + 1023) as u64) << 52)
}

#[inline(always)]
fn exp_body(xs: &mut [f64]) {
    for v in xs {
        *v = exp_core(*v);
    }
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2")]
unsafe fn exp_avx2(xs: &mut [f64]) {
    exp_body(xs);
}

/// In-place `exp`.
pub(crate) fn exp_in_place(xs: &mut [f64]) {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("avx2") {
            // SAFETY: the CPU supports AVX2, checked just above.
            unsafe { exp_avx2(xs) };
            return;
        }
    }
    exp_body(xs);
}

/// Sigmoid of `z` given `e = exp(-|z|)`.
#[inline(always)]
pub(crate) fn sigmoid_from(z: f64, e: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + e)
    } else {
        e / (1.0 + e)
    }
}

/// Tanh of `z` given `e = exp(-2|z|)`.
#[inline(always)]
pub(crate) fn tanh_from(z: f64, e: f64) -> f64 {
    let t = (1.0 - e) / (1.0 + e);
    if z < 0.0 {
        -t
    } else {
        t
    }
}

#[cfg(test)]
fn sigmoid(z: f64) -> f64 {
    let mut e = [-z.abs()];
    exp_body(&mut e);
    sigmoid_from(z, e[0])
}

#[cfg(test)]
fn tanh(z: f64) -> f64 {
    let mut e = [-2.0 * z.abs()];
    exp_body(&mut e);
    tanh_from(z, e[0])
}
