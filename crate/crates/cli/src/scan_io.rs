//! Parallel scan driver and the CSV/JSON row encodings.

use std::io::Write;
use std::thread;

use anyhow::{anyhow, Result};
use quintic_bg::scan::{blocks, scan_block, ScanConfig, ScanRow};
use serde_json::{json, Value};

pub const CSV_HEADER: [&str; 10] =
    ["r", "a", "c2", "mu", "xi", "delta", "classical_bg", "prior", "new_bound", "margin_new"];

/// Runs the scan on `workers` threads. Blocks are dealt out round-robin and
/// reassembled in block order, so the output does not depend on `workers`.
pub fn parallel_scan(config: &ScanConfig, workers: usize) -> Result<Vec<ScanRow>> {
    config.validate()?;
    let work = blocks(config);
    let workers = workers.clamp(1, work.len().max(1));
    let mut slots: Vec<Option<quintic_bg::Result<Vec<ScanRow>>>> = vec![None; work.len()];
    thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let work = &work;
                s.spawn(move || {
                    work.iter()
                        .enumerate()
                        .skip(w)
                        .step_by(workers)
                        .map(|(i, &(r, a))| (i, scan_block(config, r, a)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, rows) in h.join().expect("scan worker panicked") {
                slots[i] = Some(rows);
            }
        }
    });
    let mut out = Vec::new();
    for slot in slots {
        out.extend(slot.ok_or_else(|| anyhow!("scan block was not computed"))??);
    }
    Ok(out)
}

fn flag(b: Option<bool>) -> String {
    b.map_or_else(|| "NA".to_string(), |b| b.to_string())
}

fn csv_record(row: &ScanRow) -> [String; 10] {
    [
        row.r.to_string(),
        row.a.to_string(),
        row.c2.to_string(),
        row.mu.to_string(),
        row.xi.to_string(),
        row.delta.to_string(),
        row.classical_bg.to_string(),
        flag(row.prior),
        flag(row.new_bound),
        row.margin_new.map_or_else(|| "NA".to_string(), |m| m.to_string()),
    ]
}

pub fn write_csv<W: Write>(rows: &[ScanRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record(csv_record(row))?;
    }
    w.flush()?;
    Ok(())
}

pub fn row_json(row: &ScanRow) -> Value {
    let na = |b: Option<bool>| b.map_or(Value::Null, Value::Bool);
    json!({
        "character": [row.character.c0().to_string(), row.character.c1().to_string(), row.c2.to_string()],
        "r": row.r,
        "a": row.a,
        "c2": row.c2.to_string(),
        "mu": row.mu.to_string(),
        "xi": row.xi.to_string(),
        "delta": row.delta.to_string(),
        "classical_bg": row.classical_bg,
        "prior": na(row.prior),
        "new_bound": na(row.new_bound),
        "margin_new": row.margin_new.map_or(Value::Null, |m| Value::String(m.to_string())),
    })
}

pub fn write_json<W: Write>(rows: &[ScanRow], mut out: W) -> Result<()> {
    let v = Value::Array(rows.iter().map(row_json).collect());
    serde_json::to_writer_pretty(&mut out, &v)?;
    writeln!(out)?;
    Ok(())
}
