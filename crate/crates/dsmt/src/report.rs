//! Output rendering. Every report is a table; CSV and JSON carry the same
//! columns under the same names, in the same order.

use std::io::{self, Write};

use clap::ValueEnum;
use dsmt_core::lattice::MAX_GENERATE_ATOMS;
use dsmt_core::{generate_stream, render_expr, to_dnf, Frame};
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    /// Already formatted number; emitted unquoted in JSON.
    Num(String),
}

impl Cell {
    fn text(&self) -> &str {
        match self {
            Cell::Text(s) | Cell::Num(s) => s,
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Num(s) => s
                .parse::<serde_json::Number>()
                .map(Value::Number)
                .unwrap_or_else(|_| Value::String(s.clone())),
        }
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

pub fn num(x: impl ToString) -> Cell {
    Cell::Num(x.to_string())
}

pub fn fixed(x: f64, precision: usize) -> Cell {
    // Avoid printing "-0.000000" for tiny negative rounding residue.
    let x = if x.abs() < 0.5 * 10f64.powi(-(precision as i32)) { 0.0 } else { x };
    Cell::Num(format!("{x:.precision$}"))
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// `key: value` lines printed after a text table; extra fields in JSON.
    pub footer: Vec<(&'static str, Cell)>,
}

impl Table {
    pub fn new(headers: &[&'static str]) -> Self {
        Table { headers: headers.to_vec(), ..Default::default() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Table => self.render_text(out),
            Format::Csv => self.render_csv(out),
            Format::Json => self.render_json(out),
        }
    }

    fn render_text(&self, out: &mut dyn Write) -> io::Result<()> {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.text().chars().count());
            }
        }
        let line = |cells: Vec<&str>| -> String {
            let last = cells.len() - 1;
            let mut s = String::new();
            for (i, (c, w)) in cells.iter().zip(&widths).enumerate() {
                if i > 0 {
                    s.push_str("  ");
                }
                if i == last {
                    s.push_str(c);
                } else {
                    s.push_str(c);
                    s.extend(std::iter::repeat_n(' ', w - c.chars().count()));
                }
            }
            s
        };
        writeln!(out, "{}", line(self.headers.clone()))?;
        for row in &self.rows {
            writeln!(out, "{}", line(row.iter().map(Cell::text).collect()))?;
        }
        for (k, v) in &self.footer {
            writeln!(out, "{k}: {}", v.text())?;
        }
        Ok(())
    }

    fn render_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "{}", self.headers.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| csv_field(c.text())).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
        for (k, v) in &self.footer {
            writeln!(out, "# {k}: {}", v.text())?;
        }
        Ok(())
    }

    fn render_json(&self, out: &mut dyn Write) -> io::Result<()> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> =
                    self.headers.iter().zip(row).map(|(h, c)| (h.to_string(), c.json())).collect();
                Value::Object(obj)
            })
            .collect();
        let mut top = Map::new();
        top.insert("rows".into(), Value::Array(rows));
        for (k, v) in &self.footer {
            top.insert(k.to_string(), v.json());
        }
        serde_json::to_writer_pretty(&mut *out, &Value::Object(top))?;
        writeln!(out)
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

/// Streams `D^Θ` as `index, bits, hex, dnf` rows without materializing it.
pub fn write_hyperpowerset(frame: Frame, format: Format, out: &mut dyn Write) -> Result<u64, GenError> {
    if frame.n() as usize > MAX_GENERATE_ATOMS {
        // Refuse before any output; the empty visit returns the sized error.
        generate_stream(frame, |_| {})?;
    }
    let count = dsmt_core::known_cardinality(frame.n() as usize).map(|d| d - 1u32).ok();
    let index_width = count.as_ref().map(|c| (c - 1u32).to_string().len()).unwrap_or(1).max("index".len());
    let bits_width = frame.region_count().max("bits".len());
    let hex_width = frame.region_count().div_ceil(4).max("hex".len());

    let mut io_err: Option<io::Error> = None;
    let mut index = 0u64;
    let mut emit = |out: &mut dyn Write, line: std::fmt::Arguments<'_>| {
        if io_err.is_none() {
            if let Err(e) = out.write_fmt(line) {
                io_err = Some(e);
            }
        }
    };

    match format {
        Format::Table => emit(
            out,
            format_args!("{:<index_width$}  {:<bits_width$}  {:<hex_width$}  dnf\n", "index", "bits", "hex"),
        ),
        Format::Csv => emit(out, format_args!("index,bits,hex,dnf\n")),
        Format::Json => emit(out, format_args!("{{\n  \"n\": {},\n  \"rows\": [\n", frame.n())),
    }
    let total = generate_stream(frame, |m| {
        let bits = m.to_bit_string();
        let hex = m.to_hex();
        let dnf = render_expr(&to_dnf(m).expect("generated elements are isotone"));
        match format {
            Format::Table => emit(
                out,
                format_args!("{index:<index_width$}  {bits:<bits_width$}  {hex:<hex_width$}  {dnf}\n"),
            ),
            Format::Csv => emit(out, format_args!("{index},{bits},{hex},{dnf}\n")),
            Format::Json => {
                let sep = if index == 0 { "" } else { ",\n" };
                emit(
                    out,
                    format_args!(
                        "{sep}    {{\"index\": {index}, \"bits\": {}, \"hex\": {}, \"dnf\": {}}}",
                        Value::String(bits),
                        Value::String(hex),
                        Value::String(dnf)
                    ),
                )
            }
        }
        index += 1;
    })?;
    if format == Format::Json {
        emit(out, format_args!("\n  ]\n}}\n"));
    }
    if let Some(e) = io_err {
        return Err(GenError::Io(e));
    }
    Ok(total)
}

#[derive(Debug, thiserror::Error)]
pub enum GenError {
    #[error(transparent)]
    Core(#[from] dsmt_core::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}
