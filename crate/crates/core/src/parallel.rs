/// Runs `f` on a dedicated pool of `jobs` threads, or on the global rayon
/// pool when `jobs` is `None`.
pub(crate) fn install<R, F>(jobs: Option<usize>, f: F) -> Result<R, String>
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    match jobs {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| e.to_string())?;
            Ok(pool.install(f))
        }
    }
}
