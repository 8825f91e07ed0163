//! Exact-arithmetic identities of the Clifford algebra and the Witt basis.

use num_complex::Complex;
use num_rational::Ratio;
use rand::Rng;
use serde_json::Value;

use super::{Ctx, Outcome};
use crate::clifford::{hermitian_dim, BladeMask, ExactComplex, ExactMv, WittFrame};
use crate::error::Result;
use crate::submonogenic::{d_left_from_jets, decompose_abcd, four_equation_residuals, recombine_four, recompose, Jets};

fn mismatch(a: &ExactMv, b: &ExactMv) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    Ok(a.try_sub(b)?.to_float().norm().max(f64::MIN_POSITIVE))
}

fn int(v: i64) -> ExactComplex {
    Complex::new(Ratio::from_integer(v), Ratio::from_integer(0))
}

fn random_exact(rng: &mut impl Rng, dim: u32, terms: usize) -> ExactMv {
    let t: Vec<(BladeMask, ExactComplex)> = (0..terms)
        .map(|_| {
            let mask = BladeMask(rng.gen_range(0..(1u32 << dim)));
            let re = Ratio::new(rng.gen_range(-3i64..=3), rng.gen_range(1i64..=3));
            let im = Ratio::from_integer(rng.gen_range(-2i64..=2));
            (mask, Complex::new(re, im))
        })
        .collect();
    ExactMv::from_terms(dim, t).expect("valid masks")
}

pub(super) fn run(ctx: &mut Ctx) {
    for n in ctx.cfg.n_values(&[1, 2, 3]) {
        let dim = hermitian_dim(n);
        let params = [("n", Value::from(n)), ("mode", Value::from("exact"))];
        let samples: Vec<ExactMv> = (0..15).map(|_| random_exact(ctx.rng(), dim, 10)).collect();
        let frame = WittFrame::<ExactComplex>::new(n);

        ctx.check(&format!("generator_anticommutation_n{n}"), "e_k e_l + e_l e_k = -2δ_kl", 0.0, &params, || {
            let mut worst = 0.0f64;
            for k in 0..dim {
                for l in 0..dim {
                    let a = ExactMv::generator(dim, k)?;
                    let b = ExactMv::generator(dim, l)?;
                    let lhs = &(&a * &b) + &(&b * &a);
                    let rhs = if k == l { ExactMv::scalar(dim, int(-2)) } else { ExactMv::zero(dim) };
                    worst = worst.max(mismatch(&lhs, &rhs)?);
                }
            }
            Ok(Outcome::new(worst))
        });

        ctx.check(&format!("witt_relations_n{n}"), "f_j f_k + f_k f_j = 0, f_j f_k† + f_k† f_j = δ_jk", 0.0, &params, || {
            let mut worst = 0.0f64;
            let one = ExactMv::one(dim);
            for j in 0..=n {
                for k in 0..=n {
                    let (f, g) = (&frame.f[j], &frame.f[k]);
                    let (fd, gd) = (&frame.fdag[j], &frame.fdag[k]);
                    worst = worst.max(mismatch(&(&(f * g) + &(g * f)), &ExactMv::zero(dim))?);
                    worst = worst.max(mismatch(&(&(fd * gd) + &(gd * fd)), &ExactMv::zero(dim))?);
                    let expect = if j == k { one.clone() } else { ExactMv::zero(dim) };
                    worst = worst.max(mismatch(&(&(f * gd) + &(gd * f)), &expect)?);
                }
            }
            Ok(Outcome::new(worst))
        });

        ctx.check(&format!("idempotents_n{n}"), "f0f0† and f0†f0 are complementary orthogonal idempotents", 0.0, &params, || {
            let (p, q) = (&frame.p0, &frame.q0);
            let zero = ExactMv::zero(dim);
            let checks = [
                mismatch(&(p * p), p)?,
                mismatch(&(q * q), q)?,
                mismatch(&(p + q), &ExactMv::one(dim))?,
                mismatch(&(p * q), &zero)?,
                mismatch(&(&(p * &frame.beta) - &(&frame.beta * p)), &zero)?,
            ];
            Ok(Outcome::new(checks.into_iter().fold(0.0, f64::max)))
        });

        ctx.check(&format!("associativity_n{n}"), "(ab)c = a(bc) on random elements", 0.0, &params, || {
            let mut worst = 0.0f64;
            for t in samples.chunks_exact(3) {
                let lhs = &(&t[0] * &t[1]) * &t[2];
                let rhs = &t[0] * &(&t[1] * &t[2]);
                worst = worst.max(mismatch(&lhs, &rhs)?);
            }
            Ok(Outcome::new(worst))
        });

        ctx.check(&format!("hermitian_conjugation_n{n}"), "(ab)† = b†a†, a†† = a, (f_j)† = f_j†", 0.0, &params, || {
            let mut worst = 0.0f64;
            for t in samples.chunks_exact(2) {
                let lhs = (&t[0] * &t[1]).hermitian_conj();
                let rhs = &t[1].hermitian_conj() * &t[0].hermitian_conj();
                worst = worst.max(mismatch(&lhs, &rhs)?);
                worst = worst.max(mismatch(&t[0].hermitian_conj().hermitian_conj(), &t[0])?);
            }
            for j in 0..=n {
                worst = worst.max(mismatch(&frame.f[j].hermitian_conj(), &frame.fdag[j])?);
            }
            Ok(Outcome::new(worst))
        });

        ctx.check(&format!("clifford_conjugation_n{n}"), "conj(ab) = conj(b) conj(a)", 0.0, &params, || {
            let mut worst = 0.0f64;
            for t in samples.chunks_exact(2) {
                let lhs = (&t[0] * &t[1]).conjugate();
                let rhs = &t[1].conjugate() * &t[0].conjugate();
                worst = worst.max(mismatch(&lhs, &rhs)?);
            }
            Ok(Outcome::new(worst))
        });

        ctx.check(&format!("grade_decomposition_n{n}"), "Σ_k <a>_k = a", 0.0, &params, || {
            let mut worst = 0.0f64;
            for a in &samples {
                let mut acc = ExactMv::zero(dim);
                for k in 0..=dim {
                    acc = &acc + &a.grade_project(k)?;
                }
                worst = worst.max(mismatch(&acc, a)?);
            }
            Ok(Outcome::new(worst))
        });

        ctx.check(&format!("hermitian_split_n{n}"), "z - z† = Σ x_j e_j + x_{n+j} e_{j+n+1}", 0.0, &params, || {
            let mut worst = 0.0f64;
            for s in 0..5i64 {
                let x: Vec<ExactComplex> =
                    (0..2 * n as i64).map(|j| int((j * 7 + s * 3) % 11 - 5)).collect();
                let (z, zd) = ExactMv::hermitian_split_coords(n, &x)?;
                worst = worst.max(mismatch(&(&z - &zd), &ExactMv::embed_vector(n, &x)?)?);
            }
            Ok(Outcome::new(worst))
        });

        ctx.check(&format!("norm_identity_n{n}"), "z z† + z† z = |x|²", 0.0, &params, || {
            let mut worst = 0.0f64;
            for s in 0..5i64 {
                let xs: Vec<i64> = (0..2 * n as i64).map(|j| (j * 5 + s * 7) % 9 - 4).collect();
                let x: Vec<ExactComplex> = xs.iter().map(|&v| int(v)).collect();
                let (z, zd) = ExactMv::hermitian_split_coords(n, &x)?;
                let lhs = &(&z * &zd) + &(&zd * &z);
                let rhs = ExactMv::scalar(dim, int(xs.iter().map(|v| v * v).sum()));
                worst = worst.max(mismatch(&lhs, &rhs)?);
            }
            Ok(Outcome::new(worst))
        });

        ctx.check(&format!("abcd_roundtrip_n{n}"), "A + f0B + f0†C + f0†f0D reproduces v, blocks free of e0, e_{n+1}", 0.0, &params, || {
            let mut worst = 0.0f64;
            for v in &samples {
                let parts = decompose_abcd(v)?;
                for blk in [&parts.a, &parts.b, &parts.c, &parts.d] {
                    if !(blk.free_of(0) && blk.free_of(n as u32 + 1)) {
                        worst = worst.max(1.0);
                    }
                }
                worst = worst.max(mismatch(&recompose(&parts, &frame), v)?);
            }
            Ok(Outcome::new(worst))
        });

        let jet_samples: Vec<ExactMv> = (0..2 + 2 * n).map(|_| random_exact(ctx.rng(), dim, 12)).collect();
        ctx.check(
            &format!("four_equation_system_n{n}"),
            "f0†R1 + f0†f0R2 + f0R3 + f0f0†R4 = 𝔻f on symbolic first-order jets",
            0.0,
            &params,
            || {
                let j = Jets {
                    dz0: jet_samples[0].clone(),
                    dzb0: jet_samples[1].clone(),
                    dz: jet_samples[2..2 + n].to_vec(),
                    dzb: jet_samples[2 + n..].to_vec(),
                };
                let r = four_equation_residuals(&frame, &j)?;
                Ok(Outcome::new(mismatch(&recombine_four(&frame, &r), &d_left_from_jets(&frame, &j))?))
            },
        );
    }
}
