use std::io::Write;

use serde::Serialize;

use super::{MonteCarloError, TrialRecord};

/// One compact JSON object per line, in record order.
pub fn write_jsonl<W: Write>(records: &[TrialRecord], mut out: W) -> Result<(), MonteCarloError> {
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn records_to_jsonl(records: &[TrialRecord]) -> String {
    let mut buf = Vec::new();
    write_jsonl(records, &mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

/// CSV with a header row taken from the field names; `None` becomes an
/// empty cell.
pub fn write_csv<S: Serialize, W: Write>(rows: &[S], out: W) -> Result<(), MonteCarloError> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
