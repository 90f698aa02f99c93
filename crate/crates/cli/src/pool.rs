//! Ordered parallel map: a bounded pool of workers processes independent
//! items; results are re-sequenced to input order, so worker count never
//! changes the output, only the wall time.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;

pub fn ordered_map<T, R, F>(items: Vec<T>, workers: usize, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync,
{
    let workers = workers.max(1);
    if workers == 1 || items.len() <= 1 {
        return items.into_iter().map(f).collect();
    }
    let slots: Vec<std::sync::Mutex<Option<T>>> = items
        .into_iter()
        .map(|t| std::sync::Mutex::new(Some(t)))
        .collect();
    let cursor = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<(usize, R)>();
    let mut out: Vec<Option<R>> = (0..slots.len()).map(|_| None).collect();
    std::thread::scope(|scope| {
        for _ in 0..workers.min(slots.len()) {
            let tx = tx.clone();
            let cursor = &cursor;
            let slots = &slots;
            let f = &f;
            scope.spawn(move || loop {
                let idx = cursor.fetch_add(1, Ordering::Relaxed);
                if idx >= slots.len() {
                    break;
                }
                let item = slots[idx]
                    .lock()
                    .unwrap()
                    .take()
                    .expect("each slot taken once");
                let _ = tx.send((idx, f(item)));
            });
        }
        drop(tx);
        for (idx, r) in rx {
            out[idx] = Some(r);
        }
    });
    out.into_iter()
        .map(|r| r.expect("all slots filled"))
        .collect()
}
