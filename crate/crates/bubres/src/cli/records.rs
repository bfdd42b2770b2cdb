use crate::C64;
use std::io::{BufRead, Write};

/// Columns after the comment line.
pub const HEADER: [&str; 11] = [
    "param",
    "omega_m_re",
    "omega_m_im",
    "formula_re",
    "formula_im",
    "multipole_re",
    "multipole_im",
    "bem_re",
    "bem_im",
    "relative_error",
    "status",
];

/// Which solution the relative error is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reference {
    Multipole,
    Bem,
    None,
}

impl Reference {
    pub fn as_str(self) -> &'static str {
        match self {
            Reference::Multipole => "multipole",
            Reference::Bem => "bem",
            Reference::None => "none",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "multipole" => Some(Reference::Multipole),
            "bem" => Some(Reference::Bem),
            "none" => Some(Reference::None),
            _ => None,
        }
    }
}

/// One grid point of a sweep. `param` is `eps` or `delta`; `omega_formula`
/// is the coated formula for an `eps` sweep and the Minnaert root for a
/// `delta` sweep at `eps = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub param: f64,
    pub omega_m: Option<C64>,
    pub omega_formula: Option<C64>,
    pub omega_multipole: Option<C64>,
    pub omega_bem: Option<C64>,
    pub relative_error: Option<f64>,
    pub status: String,
}

impl SweepRecord {
    /// A row recording that the point at `param` failed.
    pub fn failed(param: f64, why: &str) -> Self {
        SweepRecord {
            param,
            omega_m: None,
            omega_formula: None,
            omega_multipole: None,
            omega_bem: None,
            relative_error: None,
            status: format!("failed: {why}"),
        }
    }

    pub fn is_failure(&self) -> bool {
        self.status.starts_with("failed")
    }

    pub fn reference_value(&self, r: Reference) -> Option<C64> {
        match r {
            Reference::Multipole => self.omega_multipole,
            Reference::Bem => self.omega_bem,
            Reference::None => None,
        }
    }
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn cplx(z: Option<C64>) -> [String; 2] {
    match z {
        Some(z) => [num(z.re), num(z.im)],
        None => [String::new(), String::new()],
    }
}

/// Writes the comment line, header and rows.
pub fn write_csv<W: Write>(
    out: W,
    variable: &str,
    reference: Reference,
    config_hash: &str,
    records: &[SweepRecord],
) -> std::io::Result<()> {
    let mut out = out;
    writeln!(out, "# bubres sweep variable={variable} reference={} config_sha256={config_hash}", reference.as_str())?;
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(HEADER)?;
    for r in records {
        let mut row = vec![num(r.param)];
        for z in [r.omega_m, r.omega_formula, r.omega_multipole, r.omega_bem] {
            row.extend(cplx(z));
        }
        row.push(r.relative_error.map(num).unwrap_or_default());
        row.push(r.status.clone());
        w.write_record(&row)?;
    }
    w.flush()
}

/// Metadata from the comment line.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvMeta {
    pub variable: String,
    pub reference: Reference,
    pub config_hash: String,
}

fn bad(msg: impl Into<String>) -> std::io::Error {
    std::io::Error::new(std::io::ErrorKind::InvalidData, msg.into())
}

/// Parses a file produced by [`write_csv`].
pub fn read_csv<R: BufRead>(mut input: R) -> std::io::Result<(CsvMeta, Vec<SweepRecord>)> {
    let mut first = String::new();
    input.read_line(&mut first)?;
    let rest = first.trim_end().strip_prefix("# bubres sweep ").ok_or_else(|| bad("missing comment line"))?;
    let mut variable = None;
    let mut reference = None;
    let mut hash = None;
    for kv in rest.split(' ') {
        match kv.split_once('=') {
            Some(("variable", v)) => variable = Some(v.to_string()),
            Some(("reference", v)) => reference = Reference::parse(v),
            Some(("config_sha256", v)) => hash = Some(v.to_string()),
            _ => return Err(bad(format!("unexpected token `{kv}`"))),
        }
    }
    let meta = CsvMeta {
        variable: variable.ok_or_else(|| bad("no variable"))?,
        reference: reference.ok_or_else(|| bad("no reference"))?,
        config_hash: hash.ok_or_else(|| bad("no hash"))?,
    };
    let mut rdr = csv::Reader::from_reader(input);
    if rdr.headers()?.iter().ne(HEADER.iter().copied()) {
        return Err(bad("unexpected header"));
    }
    let f = |s: &str| -> std::io::Result<Option<f64>> {
        if s.is_empty() {
            Ok(None)
        } else {
            s.parse().map(Some).map_err(|e| bad(format!("bad number `{s}`: {e}")))
        }
    };
    let mut records = Vec::new();
    for row in rdr.records() {
        let row = row?;
        let z = |i: usize| -> std::io::Result<Option<C64>> {
            Ok(match (f(&row[i])?, f(&row[i + 1])?) {
                (Some(re), Some(im)) => Some(C64::new(re, im)),
                (None, None) => None,
                _ => return Err(bad("half-empty complex value")),
            })
        };
        records.push(SweepRecord {
            param: f(&row[0])?.ok_or_else(|| bad("missing param"))?,
            omega_m: z(1)?,
            omega_formula: z(3)?,
            omega_multipole: z(5)?,
            omega_bem: z(7)?,
            relative_error: f(&row[9])?,
            status: row[10].to_string(),
        });
    }
    Ok((meta, records))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let recs = vec![
            SweepRecord {
                param: 0.005,
                omega_m: Some(C64::new(0.041975, -0.009017)),
                omega_formula: Some(C64::new(0.1 + 0.2, -1.0 / 3.0)),
                omega_multipole: None,
                omega_bem: Some(C64::new(f64::MIN_POSITIVE, 1e300)),
                relative_error: Some(1.0 / 7.0),
                status: "ok".into(),
            },
            SweepRecord::failed(0.01, "no convergence, after 60 iterations"),
        ];
        let mut buf = Vec::new();
        write_csv(&mut buf, "eps", Reference::Bem, "abc", &recs).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(!text.contains('\r'));
        let (meta, back) = read_csv(buf.as_slice()).unwrap();
        assert_eq!(meta.reference, Reference::Bem);
        assert_eq!(meta.variable, "eps");
        assert_eq!(back, recs);
        assert!(back[1].is_failure());
    }
}
