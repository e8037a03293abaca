//! Number formatting and the three output layouts.

use serde_json::Value;

/// Significant digits in CSV and JSON output.
pub const MACHINE_DIGITS: usize = 12;
/// Significant digits in tables.
pub const TABLE_DIGITS: usize = 6;

/// `%g`-style rendering with `digits` significant digits: fixed notation for
/// exponents in `[-5, digits)`, scientific otherwise, trailing zeros dropped.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci
        .split_once('e')
        .expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        return format!("{}e{exp}", trim_zeros(mantissa));
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `x` rounded to the precision it is printed with in machine formats, so
/// that a value read back from output is bit-identical to the one used.
pub fn round_sig(x: f64) -> f64 {
    fmt_sig(x, MACHINE_DIGITS).parse().unwrap_or(x)
}

/// JSON number at machine precision; non-finite values become `null`.
pub fn json_num(x: f64) -> Value {
    serde_json::Number::from_f64(round_sig(x)).map_or(Value::Null, Value::Number)
}

/// Left-aligned columns separated by two spaces.
pub fn table(headers: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for line in std::iter::once(headers).chain(rows.iter().map(Vec::as_slice)) {
        let cells: Vec<String> = line
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:<w$}"))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn csv(headers: &[String], rows: &[Vec<String>]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(headers).expect("writing to memory");
    for row in rows {
        writer.write_record(row).expect("writing to memory");
    }
    String::from_utf8(writer.into_inner().expect("flushing to memory"))
        .expect("csv output is utf-8")
}

pub fn json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializing a json value");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig_digits() {
        assert_eq!(fmt_sig(1.0 / 2f64.sqrt(), 6), "0.707107");
        assert_eq!(fmt_sig(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(fmt_sig(0.5, 12), "0.5");
        assert_eq!(fmt_sig(1404.0, 6), "1404");
        assert_eq!(fmt_sig(-38.0, 12), "-38");
        assert_eq!(fmt_sig(1.5e-17, 6), "1.5e-17");
        assert_eq!(fmt_sig(123456789.0, 6), "1.23457e8");
        assert_eq!(fmt_sig(0.0001234, 3), "0.000123");
        assert_eq!(fmt_sig(9.9999999, 3), "10");
        assert_eq!(fmt_sig(0.0, 12), "0");
    }

    #[test]
    fn rounding_is_idempotent() {
        for x in [0.1, 1.0 / 3.0, 2f64.sqrt(), 1e-20 / 7.0, 6.02e23] {
            let once = round_sig(x);
            assert_eq!(round_sig(once), once);
            assert_eq!(fmt_sig(once, MACHINE_DIGITS), fmt_sig(x, MACHINE_DIGITS));
        }
    }

    #[test]
    fn table_alignment() {
        let t = table(
            &["a".into(), "bb".into()],
            &[vec!["xyz".into(), "1".into()]],
        );
        assert_eq!(t, "a    bb\nxyz  1\n");
    }
}
