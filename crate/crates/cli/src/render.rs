//! Text layouts shared by the commands.

use apolar::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Integers bare; a rational with power-of-two denominator that needs a
/// single decimal digit as a decimal ("2.5"); anything else as `a/b`.
pub fn format_cell(v: &Rational) -> String {
    if v.is_integer() {
        return v.numer().to_string();
    }
    let den = v.denom();
    let power_of_two = (den & (den - BigInt::one())).is_zero();
    let tenths: BigInt = v.numer() * 10;
    if power_of_two && tenths.is_multiple_of(den) {
        let t: BigInt = tenths / den;
        let sign = if t.is_negative() { "-" } else { "" };
        let (whole, frac) = t.abs().div_rem(&BigInt::from(10));
        return format!("{sign}{whole}.{frac}");
    }
    format!("{}/{}", v.numer(), v.denom())
}

/// GitHub-style table with a header row.
pub fn markdown_table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    let line = |cells: &[String]| format!("| {} |\n", cells.join(" | "));
    out.push_str(&line(header));
    out.push_str(&format!("|{}\n", "---|".repeat(header.len())));
    for r in rows {
        out.push_str(&line(r));
    }
    out
}

pub fn csv_table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

pub fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn cells() {
        assert_eq!(format_cell(&q(4900, 1)), "4900");
        assert_eq!(format_cell(&q(5, 2)), "2.5");
        assert_eq!(format_cell(&q(429, 2)), "214.5");
        assert_eq!(format_cell(&q(-1, 2)), "-0.5");
        assert_eq!(format_cell(&q(1, 4)), "1/4");
        assert_eq!(format_cell(&q(7, 3)), "7/3");
    }

    #[test]
    fn tables() {
        let h = vec!["n".to_string(), "2".to_string()];
        let rows = vec![vec!["a, b".to_string(), "1".to_string()]];
        assert_eq!(markdown_table(&h, &rows), "| n | 2 |\n|---|---|\n| a, b | 1 |\n");
        assert_eq!(csv_table(&h, &rows), "n,2\n\"a, b\",1\n");
    }
}
