use std::sync::{Arc, RwLock};

/// Append-only sequence cache. Readers share published entries; a writer only
/// ever pushes new ones, so an index once returned never changes.
pub struct SeqCache<T> {
    items: RwLock<Vec<Arc<T>>>,
}

impl<T> SeqCache<T> {
    pub const fn new() -> Self {
        Self {
            items: RwLock::new(Vec::new()),
        }
    }

    pub fn len(&self) -> usize {
        self.items.read().unwrap_or_else(|e| e.into_inner()).len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Entry `n`, generating every missing entry below it first. `gen` gets the
    /// index and all earlier entries.
    pub fn get(&self, n: usize, gen: impl Fn(usize, &[Arc<T>]) -> T) -> Arc<T> {
        {
            let items = self.items.read().unwrap_or_else(|e| e.into_inner());
            if let Some(x) = items.get(n) {
                return Arc::clone(x);
            }
        }
        let mut items = self.items.write().unwrap_or_else(|e| e.into_inner());
        while items.len() <= n {
            let next = gen(items.len(), &items);
            items.push(Arc::new(next));
        }
        Arc::clone(&items[n])
    }

    /// Entries 0..=n.
    pub fn prefix(&self, n: usize, gen: impl Fn(usize, &[Arc<T>]) -> T) -> Vec<Arc<T>> {
        self.get(n, gen);
        let items = self.items.read().unwrap_or_else(|e| e.into_inner());
        items[..=n].to_vec()
    }
}

impl<T> Default for SeqCache<T> {
    fn default() -> Self {
        Self::new()
    }
}
