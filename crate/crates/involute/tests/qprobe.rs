use involute::chebyshev::ytilde;
use involute::genfun::Q_series;
use involute::{Polynomial, RationalFunction};

fn one_minus_xpow(p: usize) -> Polynomial {
    let mut c = vec![0i64; p + 1];
    c[0] = 1;
    c[p] = -1;
    Polynomial::from_ints(&c)
}

fn xpow(p: usize) -> Polynomial {
    let mut c = vec![0i64; p + 1];
    c[p] = 1;
    Polynomial::from_ints(&c)
}

fn q_odd_fixed(k: usize) -> RationalFunction {
    let mut sum = RationalFunction::zero();
    for i in 1..=k {
        let ii = i as i64;
        let mut num =
            &(&one_minus_xpow(2 * i - 1) * &xpow(2)) * &(&ytilde(ii - 1) * &ytilde(ii + 1));
        for j in 0..i {
            let term =
                &(&one_minus_xpow(2 * j + 1) * &xpow(2 * i + 2 - 2 * j)) * &ytilde(j as i64).pow(2);
            num = &num + &term;
        }
        let den = &ytilde(ii) * &ytilde(ii + 1);
        sum = &sum + &RationalFunction::new(num, den).unwrap();
    }
    let front = RationalFunction::new(
        xpow(2 * k + 1).scale(&involute::GaussianInt::from(2)),
        &Polynomial::from_ints(&[1, -1]) * &ytilde(k as i64 + 1).pow(2),
    )
    .unwrap();
    &front * &sum
}

#[test]
fn qprobe() {
    for k in 1..=5usize {
        let n = 40;
        let engine = Q_series(2 * k + 1, n).unwrap().real_coeffs().unwrap();
        let fixed = q_odd_fixed(k).expand(n).unwrap().real_coeffs().unwrap();
        println!("k={k} agree: {}", engine == fixed);
    }
}
