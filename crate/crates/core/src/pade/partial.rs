use super::RationalFunction;
use crate::error::{Error, Result};
use crate::numkernel::{isolate_roots, poly, BigReal};

#[derive(Debug, Clone, PartialEq)]
pub struct Pole {
    /// Pole position in the `z` coordinate.
    pub location: BigReal,
    pub residue: BigReal,
}

/// `poly(z - center) + sum_i residue_i / (z - location_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialFractions {
    pub poly: Vec<BigReal>,
    pub poles: Vec<Pole>,
    pub center: BigReal,
}

impl PartialFractions {
    pub fn eval(&self, z: &BigReal) -> BigReal {
        let prec = self.center.precision().max(z.precision());
        let mut acc = poly::eval(&self.poly, &(z - &self.center), prec);
        for p in &self.poles {
            acc += &p.residue / &(z - &p.location);
        }
        acc
    }
}

/// Decomposes `r` assuming its denominator has only real simple roots.
///
/// Poles are found as reciprocals of the roots of `w^n Q(1/w)`, which is
/// monic because `Q(0) = 1`, so every root lies within the Cauchy bound
/// `1 + max |b_j|`. Residues are `R(pole) / Q'(pole)` with `R` the remainder
/// of `P / Q`.
pub fn partial_fractions(r: &RationalFunction) -> Result<PartialFractions> {
    let prec = r.precision();
    let bmax = r
        .den
        .iter()
        .map(BigReal::abs)
        .fold(BigReal::zero(prec), |a, v| a.max(&v).clone());
    let den = poly::trim(&r.den, &(&bmax * &prec.frac_tol(1, 2)));
    let (quot, rem) = poly::divrem(&r.num, &den, prec);
    if den.len() <= 1 {
        return Ok(PartialFractions {
            poly: quot,
            poles: Vec::new(),
            center: r.center.clone(),
        });
    }

    let bound = &bmax + 2;
    let rev = poly::reversed(&den);
    let inv = isolate_roots(&rev, &-&bound, &bound, prec)?;
    let mut locs: Vec<BigReal> = inv.iter().map(BigReal::recip).collect();
    locs.sort_by(|a, b| a.partial_cmp(b).expect("finite poles"));

    let gap = prec.frac_tol(1, 4);
    for w in locs.windows(2) {
        let scale = w[0].abs().max(&w[1].abs()).clone();
        if (&w[1] - &w[0]).abs() <= &gap * &scale {
            return Err(Error::MultiplePole {
                first: (&w[0] + &r.center).to_f64(),
                second: (&w[1] + &r.center).to_f64(),
            });
        }
    }

    let dq = poly::derivative(&den);
    let poles = locs
        .into_iter()
        .map(|w| {
            let residue = poly::eval(&rem, &w, prec) / poly::eval(&dq, &w, prec);
            Pole {
                location: &w + &r.center,
                residue,
            }
        })
        .collect();
    Ok(PartialFractions {
        poly: quot,
        poles,
        center: r.center.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::Precision;
    use rand::{Rng, SeedableRng};

    fn q(n: i64, d: i64, p: Precision) -> BigReal {
        BigReal::from_ratio(n, d, p)
    }

    #[test]
    fn single_pole_with_polynomial_part() {
        // 2z / (2 - z) = -2 - 4 / (z - 2)
        let p = Precision::default();
        let r = RationalFunction::new(
            vec![q(0, 1, p), q(2, 1, p)],
            vec![q(2, 1, p), q(-1, 1, p)],
            q(0, 1, p),
        )
        .unwrap();
        let pf = partial_fractions(&r).unwrap();
        assert_eq!(pf.poly.len(), 1);
        assert!((&pf.poly[0] + 2).abs() < p.tol(10));
        assert_eq!(pf.poles.len(), 1);
        assert!((&pf.poles[0].location - 2).abs() < p.tol(10));
        assert!((&pf.poles[0].residue + 4).abs() < p.tol(10));
    }

    #[test]
    fn constant_has_no_poles() {
        let p = Precision::new(50);
        let r = RationalFunction::new(vec![q(5, 1, p)], vec![q(1, 1, p)], q(0, 1, p)).unwrap();
        let pf = partial_fractions(&r).unwrap();
        assert!(pf.poles.is_empty());
        assert_eq!(pf.poly, vec![q(5, 1, p)]);
    }

    #[test]
    fn two_sided_gamma_order_one() {
        // z + (z^2/2) / (1 - 2z/3) = (z - z^2/6) / (1 - 2z/3)
        let p = Precision::default();
        let r = RationalFunction::new(
            vec![q(0, 1, p), q(1, 1, p), q(-1, 6, p)],
            vec![q(1, 1, p), q(-2, 3, p)],
            q(0, 1, p),
        )
        .unwrap();
        let pf = partial_fractions(&r).unwrap();
        assert_eq!(pf.poles.len(), 1);
        assert!((&pf.poles[0].location - &q(3, 2, p)).abs() < p.tol(10));
    }

    #[test]
    fn resummation_at_random_points() {
        let p = Precision::default();
        // denominator with roots -1, -1/2, -1/5, 3 (as 1 + b1 z + ...)
        let roots = [q(-1, 1, p), q(-1, 2, p), q(-1, 5, p), q(3, 1, p)];
        let mut den = vec![q(1, 1, p)];
        for r in &roots {
            den = poly::mul(&den, &[q(1, 1, p), -r.recip()], p);
        }
        let num: Vec<BigReal> = [2, -1, 3, 0, 1, 7].iter().map(|&v| q(v, 1, p)).collect();
        let r = RationalFunction::new(num, den, q(0, 1, p)).unwrap();
        let pf = partial_fractions(&r).unwrap();
        assert_eq!(pf.poles.len(), 4);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let z = BigReal::from_f64(rng.gen_range(-4.0..4.0), p);
            let want = r.eval(&z).unwrap();
            let got = pf.eval(&z);
            assert!(((&got - &want) / &want).abs() <= p.tol(20));
        }
    }

    #[test]
    fn coincident_poles_rejected() {
        let p = Precision::new(60);
        // (1 - z)^2 has a double root the isolator cannot split
        let den = vec![q(1, 1, p), q(-2, 1, p), q(1, 1, p)];
        let r = RationalFunction::new(vec![q(1, 1, p)], den, q(0, 1, p)).unwrap();
        assert!(partial_fractions(&r).is_err());
    }

    #[test]
    fn nonzero_center() {
        let p = Precision::new(80);
        // 1 / (1 - (z - 1)) has its pole at z = 2
        let r = RationalFunction::new(vec![q(1, 1, p)], vec![q(1, 1, p), q(-1, 1, p)], q(1, 1, p))
            .unwrap();
        let pf = partial_fractions(&r).unwrap();
        assert!((&pf.poles[0].location - 2).abs() < p.tol(10));
        let z = q(7, 3, p);
        assert!((pf.eval(&z) - r.eval(&z).unwrap()).abs() < p.tol(10));
    }
}
