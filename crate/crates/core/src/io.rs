//! Serialization: event logs as CSV (`time,kind,batch`), full paths and
//! summaries as JSON.

use crate::error::CoreError;
use crate::path::{Event, EventKind, SamplePath};
use crate::summary::EmpiricalSummary;
use std::io::{Read, Write};

pub fn write_events_csv<W: Write>(events: &[Event], w: W) -> Result<(), CoreError> {
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(["time", "kind", "batch"])?;
    for e in events {
        // Shortest round-trip float formatting keeps files locale-free and
        // byte-reproducible.
        csv.write_record([e.time.to_string(), e.kind.as_str().to_string(), e.batch.to_string()])?;
    }
    csv.flush()?;
    Ok(())
}

pub fn read_events_csv<R: Read>(r: R) -> Result<Vec<Event>, CoreError> {
    let mut csv = csv::Reader::from_reader(r);
    let mut events = Vec::new();
    for record in csv.records() {
        let record = record?;
        if record.len() != 3 {
            return Err(CoreError::Parse(format!(
                "expected 3 columns, got {}",
                record.len()
            )));
        }
        let time: f64 = record[0]
            .parse()
            .map_err(|e| CoreError::Parse(format!("bad time `{}`: {e}", &record[0])))?;
        let kind = EventKind::parse(&record[1])?;
        let batch: u64 = record[2]
            .parse()
            .map_err(|e| CoreError::Parse(format!("bad batch `{}`: {e}", &record[2])))?;
        events.push(Event::new(time, kind, batch));
    }
    Ok(events)
}

pub fn write_path_json<W: Write>(path: &SamplePath, w: W) -> Result<(), CoreError> {
    serde_json::to_writer_pretty(w, path)?;
    Ok(())
}

pub fn read_path_json<R: Read>(r: R) -> Result<SamplePath, CoreError> {
    Ok(serde_json::from_reader(r)?)
}

pub fn write_summary_json<W: Write>(s: &EmpiricalSummary, w: W) -> Result<(), CoreError> {
    serde_json::to_writer_pretty(w, s)?;
    Ok(())
}

pub fn read_summary_json<R: Read>(r: R) -> Result<EmpiricalSummary, CoreError> {
    Ok(serde_json::from_reader(r)?)
}
