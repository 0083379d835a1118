//! Worker-count policy.
//!
//! `STEREOROMA_THREADS` caps the number of worker threads used by the
//! parallel stages (SGM path aggregation, per-sample gradient evaluation).
//! 0 or unset means auto (available parallelism). All parallel stages reduce
//! their results in a fixed order, so the worker count never changes output.

use std::sync::atomic::{AtomicUsize, Ordering};

static WORKER_CAP: AtomicUsize = AtomicUsize::new(0);

pub const ENV_VAR: &str = "STEREOROMA_THREADS";

/// Set the worker cap explicitly (0 = auto).
pub fn set_worker_cap(n: usize) {
    WORKER_CAP.store(n, Ordering::Relaxed);
}

/// Read the cap from `STEREOROMA_THREADS` (invalid values mean auto).
pub fn init_from_env() {
    let n = std::env::var(ENV_VAR)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(0);
    set_worker_cap(n);
}

/// Number of workers to actually spawn for `jobs` independent jobs.
pub fn workers_for(jobs: usize) -> usize {
    let cap = WORKER_CAP.load(Ordering::Relaxed);
    let auto = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    let cap = if cap == 0 { auto } else { cap.min(auto) };
    cap.max(1).min(jobs.max(1))
}

/// Run `f(i)` for `i in 0..jobs` on up to [`workers_for`] scoped threads and
/// return the results ordered by job index.
pub fn run_jobs<T, F>(jobs: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let workers = workers_for(jobs);
    if workers <= 1 || jobs <= 1 {
        return (0..jobs).map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let mut slots: Vec<Option<T>> = (0..jobs).map(|_| None).collect();
    let slot_ptr = slots.as_mut_ptr() as usize;
    std::thread::scope(|scope| {
        for _ in 0..workers {
            let next = &next;
            let f = &f;
            scope.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= jobs {
                    break;
                }
                let out = f(i);
                // Each job index is claimed exactly once, so the write below
                // touches a distinct slot.
                unsafe {
                    let p = (slot_ptr as *mut Option<T>).add(i);
                    p.write(Some(out));
                }
            });
        }
    });
    slots.into_iter().map(|s| s.unwrap()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jobs_return_in_index_order() {
        set_worker_cap(4);
        let out = run_jobs(17, |i| i * i);
        assert_eq!(out, (0..17).map(|i| i * i).collect::<Vec<_>>());
        set_worker_cap(0);
    }

    #[test]
    fn zero_cap_means_auto() {
        set_worker_cap(0);
        assert!(workers_for(8) >= 1);
    }
}
