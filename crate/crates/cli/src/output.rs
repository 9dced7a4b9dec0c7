//! Table rendering: aligned text, JSON, CSV.

use std::io::{self, Write};

use freeprob::scalar::{decimal_digits, decimal_string};
use freeprob::{CoeffTable, Finding, Provenance};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

/// A table as emitted: symbolic entries plus one numeric column per `t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableOut {
    pub table: String,
    pub order: usize,
    pub entries: Vec<EntryOut>,
    pub provenance: Provenance,
    pub errata: Vec<Finding>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryOut {
    pub n: usize,
    pub symbolic: String,
    /// Keyed `t=<rational>`, in the order the times were given.
    pub numeric: Map<String, Value>,
}

/// Column key for a time value.
pub fn t_key(t: &BigRational) -> String {
    format!("t={t}")
}

impl TableOut {
    pub fn from_table(table: &CoeffTable, times: &[BigRational], precision_bits: usize) -> TableOut {
        let digits = decimal_digits(precision_bits);
        let entries = table
            .entries
            .iter()
            .map(|e| {
                let mut numeric = Map::new();
                for t in times {
                    let v = match e.value.eval_rational(t, precision_bits) {
                        Ok(x) => decimal_string(&x, digits),
                        Err(_) => "pole".to_string(),
                    };
                    numeric.insert(t_key(t), Value::String(v));
                }
                EntryOut { n: e.n, symbolic: e.value.to_string(), numeric }
            })
            .collect();
        TableOut {
            table: table.label.clone(),
            order: table.order,
            entries,
            provenance: table.provenance,
            errata: table.errata.clone(),
        }
    }
}

pub fn write_pretty(w: &mut dyn Write, tables: &[TableOut], times: &[BigRational]) -> io::Result<()> {
    for (i, t) in tables.iter().enumerate() {
        if i > 0 {
            writeln!(w)?;
        }
        let prov = match t.provenance {
            Provenance::ClosedForm => "closed form",
            Provenance::Oracle => "oracle",
        };
        writeln!(w, "{} ({prov}), order {}", t.table, t.order)?;
        let sym_w = t.entries.iter().map(|e| e.symbolic.len()).max().unwrap_or(0).max(8);
        let n_w = t.entries.iter().map(|e| e.n.to_string().len()).max().unwrap_or(1).max(1);
        let mut header = format!("  {:>n_w$}  {:<sym_w$}", "n", "symbolic");
        for x in times {
            header.push_str(&format!("  {}", t_key(x)));
        }
        writeln!(w, "{}", header.trim_end())?;
        for e in &t.entries {
            let mut line = format!("  {:>n_w$}  {:<sym_w$}", e.n, e.symbolic);
            for v in e.numeric.values() {
                line.push_str(&format!("  {}", v.as_str().unwrap_or_default()));
            }
            writeln!(w, "{}", line.trim_end())?;
        }
        for f in &t.errata {
            write_finding(w, f)?;
        }
    }
    Ok(())
}

pub fn write_finding(w: &mut dyn Write, f: &Finding) -> io::Result<()> {
    let verdict = if f.as_printed_holds { "holds" } else { "erratum" };
    writeln!(w, "  [{verdict}] {}: {}", f.topic, f.resolution)?;
    for e in &f.evidence {
        writeln!(w, "      {e}")?;
    }
    Ok(())
}

pub fn write_json(w: &mut dyn Write, tables: &[TableOut]) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *w, tables)?;
    writeln!(w)
}

/// One CSV block per table, each preceded by a `# <label>` comment line.
pub fn write_csv(w: &mut dyn Write, tables: &[TableOut], times: &[BigRational]) -> io::Result<()> {
    for (i, t) in tables.iter().enumerate() {
        if i > 0 {
            writeln!(w)?;
        }
        writeln!(w, "# {}", t.table)?;
        let mut out = csv::Writer::from_writer(&mut *w);
        let mut header = vec!["n".to_string(), "symbolic".to_string()];
        header.extend(times.iter().map(t_key));
        out.write_record(&header)?;
        for e in &t.entries {
            let mut row = vec![e.n.to_string(), e.symbolic.clone()];
            row.extend(e.numeric.values().map(|v| v.as_str().unwrap_or_default().to_string()));
            out.write_record(&row)?;
        }
        out.flush()?;
    }
    Ok(())
}
