use num_complex::Complex64;

/// C-style `%.{digits}g`.
pub fn fmt_g(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let p = digits.max(1);
    let sci = format!("{:.*e}", p - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= p as i32 {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (p as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Root or force value with 12 significant digits. Components below
/// `1e-12` of the modulus are shown as zero.
pub fn fmt_complex(z: Complex64) -> String {
    let scale = z.norm().max(1.0) * 1e-12;
    let re = if z.re.abs() <= scale { 0.0 } else { z.re };
    let im = if z.im.abs() <= scale { 0.0 } else { z.im };
    match (re == 0.0, im == 0.0) {
        (_, true) => fmt_g(re, 12),
        (true, false) => format!("{}i", fmt_g(im, 12)),
        (false, false) => {
            let sign = if im < 0.0 { '-' } else { '+' };
            format!("{}{sign}{}i", fmt_g(re, 12), fmt_g(im.abs(), 12))
        }
    }
}

/// Comma-separated positive tolerances.
pub fn parse_levels(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|s| match s.trim().parse::<f64>() {
            Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
            _ => Err(format!("invalid level {s:?}; levels must be positive numbers")),
        })
        .collect()
}
