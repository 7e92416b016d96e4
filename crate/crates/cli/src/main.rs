use std::io::{self, Write};
use std::process::ExitCode;

/// Treats a closed stdout as a sink so `ssg ... | head` exits cleanly.
struct PipeTolerant<W>(W);

impl<W: Write> Write for PipeTolerant<W> {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        match self.0.write(buf) {
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(buf.len()),
            r => r,
        }
    }

    fn flush(&mut self) -> io::Result<()> {
        match self.0.flush() {
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
            r => r,
        }
    }
}

fn main() -> ExitCode {
    let mut out = PipeTolerant(io::stdout().lock());
    let code = ssg_cli::run(std::env::args_os(), &mut io::stdin().lock(), &mut out, &mut io::stderr().lock());
    let _ = out.flush();
    ExitCode::from(code as u8)
}
