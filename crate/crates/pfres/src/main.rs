fn main() {
    // restore default SIGPIPE so piping into `head` behaves like a normal CLI
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(pfres::cli::run());
}
