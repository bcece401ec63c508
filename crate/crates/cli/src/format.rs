//! Number formatting for `eval` output.

use beta_ensembles::opuc::MonicPolynomial;

/// Shortest of fixed or scientific notation at 15 significant digits, with
/// trailing zeros removed (like C's `%.15g`).
pub fn g15(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.14e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let decimals = (14 - exp).max(0) as usize;
        trim(&format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}", trim(mantissa), exp)
    }
}

fn trim(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// `x^n - c x^{n-1} + …` in descending powers; exact zeros are omitted.
pub fn polynomial(p: &MonicPolynomial) -> String {
    let c = p.real_coeffs();
    let n = p.degree();
    let mut out = power(n);
    for k in (0..n).rev() {
        let v = c[k];
        if v == 0.0 {
            continue;
        }
        let sign = if v < 0.0 { " - " } else { " + " };
        let mag = g15(v.abs());
        out.push_str(sign);
        match k {
            0 => out.push_str(&mag),
            _ => {
                out.push_str(&mag);
                out.push(' ');
                out.push_str(&power(k));
            }
        }
    }
    out
}

fn power(k: usize) -> String {
    match k {
        0 => "1".into(),
        1 => "x".into(),
        _ => format!("x^{k}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_digits() {
        assert_eq!(g15(2.0), "2");
        assert_eq!(g15(2.0 / 3.0), "0.666666666666667");
        assert_eq!(g15(1.0 / 12.0), "0.0833333333333333");
        assert_eq!(g15(-1234.5), "-1234.5");
        assert_eq!(g15(1e-7 / 3.0), "3.33333333333333e-8");
        assert_eq!(g15(6.02e23), "6.02e23");
        assert_eq!(g15(0.0), "0");
    }

    #[test]
    fn polynomial_text() {
        let p = MonicPolynomial::from_real(&[-2.0 / 3.0, 1.0]);
        assert_eq!(polynomial(&p), "x - 0.666666666666667");
        let p = MonicPolynomial::from_real(&[0.25, 0.0, 1.0]);
        assert_eq!(polynomial(&p), "x^2 + 0.25");
        let p = MonicPolynomial::from_real(&[1.0]);
        assert_eq!(polynomial(&p), "1");
    }
}
