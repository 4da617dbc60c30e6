use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} must be positive")]
    ZeroCount { what: &'static str },
    #[error("library has {files} files but there are {users} users (need N >= K)")]
    FilesFewerThanUsers { files: usize, users: usize },
    #[error("{caches} caches exceed {users} users (need Λ <= K)")]
    TooManyCaches { caches: usize, users: usize },
    #[error("at most {max} caches are supported, got {caches}")]
    CacheLimit { caches: usize, max: usize },
    #[error("cache size must lie in [0, N]")]
    CacheSizeOutOfRange,
    #[error("normalized cache size must lie in [0, 1]")]
    GammaOutOfRange,
    #[error("user {user} is outside 0..{users}")]
    UserOutOfRange { user: usize, users: usize },
    #[error("user {user} is associated to more than one cache")]
    DuplicateUser { user: usize },
    #[error("user {user} is not associated to any cache")]
    MissingUser { user: usize },
    #[error("expected {expected} caches, found {found}")]
    CacheCountMismatch { expected: usize, found: usize },
    #[error("file {file} is outside 0..{files}")]
    FileOutOfRange { file: usize, files: usize },
    #[error("demand has {found} entries, expected {expected}")]
    DemandLength { expected: usize, found: usize },
    #[error("profile must be sorted in descending order")]
    UnsortedProfile,
    #[error("profile sums to {found}, expected {expected}")]
    ProfileSum { expected: usize, found: usize },
    #[error("Λγ is not an integer; use the convex envelope for this cache size")]
    NonIntegerT,
    #[error("file length {file_len} is not divisible by {subfiles} subfiles")]
    IndivisibleLength { file_len: usize, subfiles: usize },
    #[error("user {user} is not a target of this transmission")]
    NotTargeted { user: usize },
    #[error("user {user} lacks side information for file {file}")]
    MissingSideInfo { user: usize, file: usize },
    #[error("node subset is not acyclic")]
    CyclicSubgraph,
    #[error("demand class has {size} members, above the cap of {cap}")]
    ClassTooLarge { size: u128, cap: u128 },
    #[error("graph has {nodes} candidate nodes, above the cap of {cap}")]
    GraphTooLarge { nodes: usize, cap: usize },
    #[error("cache order is not a population-descending permutation")]
    InvalidOrder,
    #[error("subfile sizes of file {file} do not sum to one file")]
    InvalidSizes { file: usize },
}
