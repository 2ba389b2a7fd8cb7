use eseplab_core::{Event, EventKind};

/// Receiver for simulator events; lets end-state runs skip log allocation.
pub trait EventSink {
    fn event(&mut self, time: f64, kind: EventKind, batch: u64);
}

#[derive(Debug, Default)]
pub struct LogSink(pub Vec<Event>);

impl EventSink for LogSink {
    fn event(&mut self, time: f64, kind: EventKind, batch: u64) {
        self.0.push(Event::new(time, kind, batch));
    }
}

#[derive(Debug, Default)]
pub struct NullSink;

impl EventSink for NullSink {
    fn event(&mut self, _: f64, _: EventKind, _: u64) {}
}
