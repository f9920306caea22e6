//! Text rendering of scalars, tuples and elements.

use cyclic_leibniz::Scalar;

const SIGNIFICANT: usize = 12;

/// `x` with 12 significant digits, trailing zeros dropped; exponent form
/// outside `[1e-4, 1e12)`.
pub fn real(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", SIGNIFICANT - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= SIGNIFICANT as i32 {
        format!("{}e{exp}", trim_zeros(mantissa))
    } else {
        let decimals = (SIGNIFICANT as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Components with modulus at most `eps` are shown as zero.
pub fn snap(z: Scalar, eps: f64) -> Scalar {
    let clean = |v: f64| if v.abs() <= eps { 0.0 } else { v };
    Scalar::new(clean(z.re), clean(z.im))
}

/// `a+bi`; a zero imaginary part is omitted.
pub fn complex(z: Scalar, eps: f64) -> String {
    let z = snap(z, eps);
    if z.im == 0.0 {
        return real(z.re);
    }
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{}{sign}{}i", real(z.re), real(z.im.abs()))
}

pub fn tuple(entries: &[Scalar], eps: f64) -> String {
    let parts: Vec<String> = entries.iter().map(|&z| complex(z, eps)).collect();
    format!("({})", parts.join(", "))
}

pub fn superscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .bytes()
        .map(|b| DIGITS[(b - b'0') as usize])
        .collect()
}

fn power(j: usize) -> String {
    if j == 1 {
        "a".into()
    } else {
        format!("a{}", superscript(j))
    }
}

/// `Σ cⱼ aʲ` over `first, first + 1, …`, skipping zero coefficients.
pub fn combination(first: usize, coeffs: &[Scalar], eps: f64) -> String {
    let mut out = String::new();
    for (j, &c) in (first..).zip(coeffs) {
        let c = snap(c, eps);
        if c.re == 0.0 && c.im == 0.0 {
            continue;
        }
        let (negative, body) = if c.im == 0.0 {
            let m = c.re.abs();
            let coeff = if m == 1.0 { String::new() } else { real(m) };
            (c.re < 0.0, format!("{coeff}{}", power(j)))
        } else {
            (false, format!("({}){}", complex(c, eps), power(j)))
        };
        match (out.is_empty(), negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `a·aⁿ = …` for a law given in tail layout (powers `2..=n`).
pub fn law(n: usize, coeffs: &[Scalar], eps: f64) -> String {
    format!("a·{} = {}", power(n), combination(2, coeffs, eps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Scalar {
        Scalar::new(re, im)
    }

    #[test]
    fn reals() {
        assert_eq!(real(1.0), "1");
        assert_eq!(real(-0.5), "-0.5");
        assert_eq!(real(1.0 / 3.0), "0.333333333333");
        assert_eq!(real(2.0 / 3.0 * 1e5), "66666.6666667");
        assert_eq!(real(1e-9), "1e-9");
        assert_eq!(real(1.5e20), "1.5e20");
        assert_eq!(real(123456789012.0), "123456789012");
    }

    #[test]
    fn complexes() {
        assert_eq!(complex(c(-1.0, 1e-17), 1e-9), "-1");
        assert_eq!(
            complex(c(-0.5, -3f64.sqrt() / 2.0), 1e-9),
            "-0.5-0.866025403784i"
        );
        assert_eq!(complex(c(0.0, 2.0), 1e-9), "0+2i");
        assert_eq!(complex(c(-0.0, 0.0), 1e-9), "0");
    }

    #[test]
    fn combinations() {
        let eps = 1e-9;
        assert_eq!(law(3, &[c(0.0, 0.0), c(1.0, 0.0)], eps), "a·a³ = a³");
        assert_eq!(law(3, &[c(1.0, 0.0), c(-1.0, 0.0)], eps), "a·a³ = a² - a³");
        assert_eq!(law(4, &[c(0.0, 0.0); 3], eps), "a·a⁴ = 0");
        assert_eq!(
            combination(1, &[c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)], eps),
            "a² + 2a³"
        );
        assert_eq!(
            combination(1, &[c(-2.5, 0.0), c(0.0, 1.0)], eps),
            "-2.5a + (0+1i)a²"
        );
        assert_eq!(superscript(12), "¹²");
    }
}
