use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A complex number in the `{"re": …, "im": …}` JSON form.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexVal {
    pub re: f64,
    pub im: f64,
}

impl ComplexVal {
    pub fn new(re: f64, im: f64) -> Self {
        ComplexVal { re, im }
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl From<Complex64> for ComplexVal {
    fn from(z: Complex64) -> Self {
        ComplexVal { re: z.re, im: z.im }
    }
}

impl From<ComplexVal> for Complex64 {
    fn from(z: ComplexVal) -> Self {
        Complex64::new(z.re, z.im)
    }
}

/// Parses `0.3+0.4i`, `-2i`, `1`, `i`, `1e-3-2.5e1i`.
pub fn parse_complex(text: &str) -> Option<Complex64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().ok().map(|re| Complex64::new(re, 0.0));
    };
    // split at the last sign that is not an exponent sign
    let bytes = body.as_bytes();
    let mut split = 0;
    for k in (1..bytes.len()).rev() {
        if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
            split = k;
            break;
        }
    }
    let (re_part, im_part) = body.split_at(split);
    let re = if re_part.is_empty() { 0.0 } else { re_part.parse::<f64>().ok()? };
    let im = match im_part {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => t.parse::<f64>().ok()?,
    };
    Some(Complex64::new(re, im))
}
