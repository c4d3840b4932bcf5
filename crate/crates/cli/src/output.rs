use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Aligned text columns.
    Table,
    Csv,
    Json,
}

/// Rows of decimal strings plus a few summary fields.
#[derive(Debug, Default)]
pub struct Report {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub notes: Vec<(String, String)>,
}

impl Report {
    pub fn new(columns: &[&str]) -> Self {
        Report {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            ..Report::default()
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn note(&mut self, key: &str, value: impl Into<String>) {
        self.notes.push((key.into(), value.into()));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.table(),
            Format::Csv => self.csv(),
            Format::Json => {
                let mut doc = Map::new();
                for (k, v) in &self.notes {
                    doc.insert(k.clone(), Value::String(v.clone()));
                }
                let rows = self
                    .rows
                    .iter()
                    .map(|r| {
                        Value::Object(
                            self.columns
                                .iter()
                                .zip(r)
                                .map(|(c, v)| (c.clone(), Value::String(v.clone())))
                                .collect(),
                        )
                    })
                    .collect();
                doc.insert("rows".into(), Value::Array(rows));
                let mut s =
                    serde_json::to_string_pretty(&Value::Object(doc)).expect("strings serialize");
                s.push('\n');
                s
            }
        }
    }

    fn table(&self) -> String {
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        for r in &self.rows {
            for (w, v) in widths.iter_mut().zip(r) {
                *w = (*w).max(v.len());
            }
        }
        let line = |cells: &[String]| {
            let mut s = cells
                .iter()
                .zip(&widths)
                .map(|(v, w)| format!("{v:>w$}"))
                .collect::<Vec<_>>()
                .join("  ");
            s.push('\n');
            s
        };
        let mut out = String::new();
        if !self.columns.is_empty() {
            out += &line(&self.columns);
            for r in &self.rows {
                out += &line(r);
            }
        }
        for (k, v) in &self.notes {
            out += &format!("{k}: {v}\n");
        }
        out
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }
}

/// `v` with `digits` significant digits, in positional notation for
/// moderate magnitudes and scientific notation otherwise.
pub fn num(v: f64, digits: usize) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    if v == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..15).contains(&exp) {
        return sci;
    }
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let figures: String = mantissa.chars().filter(|c| *c != '.').collect();
    let point = exp + 1;
    let body = if point <= 0 {
        format!("0.{}{figures}", "0".repeat((-point) as usize))
    } else if point as usize >= figures.len() {
        format!("{figures}{}", "0".repeat(point as usize - figures.len()))
    } else {
        let (a, b) = figures.split_at(point as usize);
        format!("{a}.{b}")
    };
    format!("{sign}{body}")
}
