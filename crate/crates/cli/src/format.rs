/// `%g`-style rendering with `sig` significant digits.
pub fn num(x: f64, sig: usize) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sig = sig.max(1);
    let exp = x.abs().log10().floor() as i32;
    // Rounding can carry into the next decade (9.999995 -> 10.0000).
    let exp = {
        let rounded: f64 = format!("{:.*e}", sig - 1, x).parse().unwrap_or(x);
        rounded.abs().log10().floor() as i32
    }
    .max(exp);
    if exp < -5 || exp >= sig as i32 {
        let s = format!("{:.*e}", sig - 1, x);
        let (mantissa, e) = s.split_once('e').expect("scientific format has an exponent");
        format!("{}e{}", trim(mantissa), e)
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
