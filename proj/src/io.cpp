#include "symfrog/io.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <string>

#include "symfrog/kdf.hpp"

namespace symfrog {

namespace {

[[noreturn]] void throw_errno(const std::string& what, const std::filesystem::path& path) {
  throw IoError(what + " '" + path.string() + "': " + std::strerror(errno));
}

void fsync_parent_dir(const std::filesystem::path& path) {
  std::filesystem::path dir = path.parent_path();
  if (dir.empty()) dir = ".";
  const int dfd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY | O_CLOEXEC);
  if (dfd < 0) return;  // best effort
  (void)::fsync(dfd);
  ::close(dfd);
}

}  // namespace

std::size_t read_fully(ByteSource& src, std::span<std::uint8_t> buf) {
  std::size_t got = 0;
  while (got < buf.size()) {
    const std::size_t n = src.read(buf.subspan(got));
    if (n == 0) break;
    got += n;
  }
  return got;
}

std::size_t MemorySource::read(std::span<std::uint8_t> buf) {
  const std::size_t n = std::min(buf.size(), data_.size() - pos_);
  std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(pos_), n, buf.begin());
  pos_ += n;
  return n;
}

std::size_t LimitedSource::read(std::span<std::uint8_t> buf) {
  if (remaining_ == 0) return 0;
  if (buf.size() > remaining_) buf = buf.first(static_cast<std::size_t>(remaining_));
  const std::size_t n = inner_.read(buf);
  remaining_ -= n;
  return n;
}

FileSource::FileSource(const std::filesystem::path& path) : path_(path) {
  fd_ = ::open(path.c_str(), O_RDONLY | O_CLOEXEC);
  if (fd_ < 0) throw_errno("cannot open", path);
}

FileSource::~FileSource() {
  if (fd_ >= 0) ::close(fd_);
}

std::size_t FileSource::read(std::span<std::uint8_t> buf) {
  for (;;) {
    const ssize_t n = ::read(fd_, buf.data(), buf.size());
    if (n >= 0) return static_cast<std::size_t>(n);
    if (errno != EINTR) throw_errno("read failed on", path_);
  }
}

std::uint64_t FileSource::size() const {
  struct stat st {};
  if (::fstat(fd_, &st) != 0) throw_errno("cannot stat", path_);
  return static_cast<std::uint64_t>(st.st_size);
}

AtomicOutputFile::AtomicOutputFile(const std::filesystem::path& destination)
    : destination_(destination) {
  // Random suffix in the destination's directory; O_EXCL guards collisions.
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::array<std::uint8_t, 8> rnd{};
    kdf::random_bytes(rnd);
    temp_path_ = destination_;
    temp_path_ += ".tmp." + to_hex(rnd);
    fd_ = ::open(temp_path_.c_str(), O_WRONLY | O_CREAT | O_EXCL | O_CLOEXEC, 0600);
    if (fd_ >= 0) return;
    if (errno != EEXIST) throw_errno("cannot create temporary file", temp_path_);
  }
  throw IoError("cannot create a unique temporary file next to '" + destination_.string() + "'");
}

AtomicOutputFile::~AtomicOutputFile() { discard(); }

void AtomicOutputFile::write(ByteView data) {
  if (fd_ < 0) throw IoError("write to closed output '" + destination_.string() + "'");
  std::size_t off = 0;
  while (off < data.size()) {
    const ssize_t n = ::write(fd_, data.data() + off, data.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw_errno("write failed on", temp_path_);
    }
    if (n == 0) throw IoError("write made no progress on '" + temp_path_.string() + "'");
    off += static_cast<std::size_t>(n);
  }
}

void AtomicOutputFile::commit() {
  if (fd_ < 0) throw IoError("commit of closed output '" + destination_.string() + "'");
  if (::fsync(fd_) != 0) throw_errno("fsync failed on", temp_path_);
  if (::close(fd_) != 0) {
    fd_ = -1;
    throw_errno("close failed on", temp_path_);
  }
  fd_ = -1;
  if (::rename(temp_path_.c_str(), destination_.c_str()) != 0) {
    const int saved = errno;
    ::unlink(temp_path_.c_str());
    errno = saved;
    throw_errno("cannot rename onto", destination_);
  }
  temp_path_.clear();
  fsync_parent_dir(destination_);
}

void AtomicOutputFile::discard() noexcept {
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
  if (!temp_path_.empty()) {
    ::unlink(temp_path_.c_str());
    temp_path_.clear();
  }
}

Bytes read_file(const std::filesystem::path& path) {
  FileSource src(path);
  Bytes out(static_cast<std::size_t>(src.size()));
  const std::size_t n = read_fully(src, out);
  out.resize(n);
  return out;
}

void write_file_atomic(const std::filesystem::path& path, ByteView data) {
  AtomicOutputFile f(path);
  f.write(data);
  f.commit();
}

}  // namespace symfrog
