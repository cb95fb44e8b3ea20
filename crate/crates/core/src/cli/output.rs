//! CSV and JSON payloads. CSV numbers carry 17 significant digits; JSON uses
//! the shortest representation that round-trips.

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::spectra::{EnergyLevel, WavefunctionGrid};

/// 17 significant digits.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

pub struct Csv {
    text: String,
    columns: usize,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Csv {
            text: header.join(",") + "\n",
            columns: header.len(),
        }
    }

    pub fn row(&mut self, cells: &[String]) {
        debug_assert_eq!(cells.len(), self.columns);
        self.text.push_str(&cells.join(","));
        self.text.push('\n');
    }

    pub fn finish(self) -> String {
        self.text
    }
}

pub fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialise");
    s.push('\n');
    s
}

pub fn complex(z: Complex64) -> Value {
    json!({"re": z.re, "im": z.im})
}

pub fn level_json(l: &EnergyLevel) -> Value {
    json!({
        "E": l.energy,
        "parity": l.parity,
        "condition": l.condition,
        "residual": l.residual,
        "bracket": [l.bracket.0, l.bracket.1],
        "physical": l.is_physical(),
    })
}

pub fn levels_csv(levels: &[EnergyLevel]) -> String {
    let mut csv = Csv::new(&["E", "parity", "condition", "residual", "bracket_lo", "bracket_hi"]);
    for l in levels {
        csv.row(&[
            num(l.energy),
            l.parity.to_string(),
            l.condition.to_string(),
            num(l.residual),
            num(l.bracket.0),
            num(l.bracket.1),
        ]);
    }
    csv.finish()
}

pub fn grid_csv(g: &WavefunctionGrid) -> String {
    let mut csv = Csv::new(&["x", "psi"]);
    for (x, p) in g.xs.iter().zip(&g.psi) {
        csv.row(&[num(*x), num(*p)]);
    }
    csv.finish()
}

/// Human summary line, 3 decimals.
pub fn level_summary(levels: &[EnergyLevel]) -> String {
    let parts: Vec<String> = levels
        .iter()
        .enumerate()
        .map(|(i, l)| format!("E{i} = {:.3} ({}, {})", l.energy, l.parity, l.condition))
        .collect();
    if parts.is_empty() {
        "no levels found".into()
    } else {
        parts.join("; ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, 18.610849515026, 1e-300, -2.5e17] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(num(f64::NAN), "NaN");
    }

    #[test]
    fn csv_layout() {
        let mut c = Csv::new(&["a", "b"]);
        c.row(&["1".into(), "2".into()]);
        assert_eq!(c.finish(), "a,b\n1,2\n");
    }
}
