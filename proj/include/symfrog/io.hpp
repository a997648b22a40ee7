#pragma once

#include <cstdint>
#include <filesystem>
#include <span>

#include "symfrog/common.hpp"

namespace symfrog {

class ByteSource {
 public:
  virtual ~ByteSource() = default;
  /// Reads up to buf.size() bytes. Returns 0 only at end of input.
  virtual std::size_t read(std::span<std::uint8_t> buf) = 0;
};

class ByteSink {
 public:
  virtual ~ByteSink() = default;
  virtual void write(ByteView data) = 0;
};

/// Fills `buf` completely unless the source ends first; returns bytes read.
std::size_t read_fully(ByteSource& src, std::span<std::uint8_t> buf);

class MemorySource final : public ByteSource {
 public:
  explicit MemorySource(ByteView data) : data_(data) {}
  std::size_t read(std::span<std::uint8_t> buf) override;

 private:
  ByteView data_;
  std::size_t pos_ = 0;
};

class MemorySink final : public ByteSink {
 public:
  void write(ByteView data) override { bytes.insert(bytes.end(), data.begin(), data.end()); }
  Bytes bytes;
};

/// Discards everything written to it.
class NullSink final : public ByteSink {
 public:
  void write(ByteView) override {}
};

/// Caps an underlying source at `limit` bytes.
class LimitedSource final : public ByteSource {
 public:
  LimitedSource(ByteSource& inner, std::uint64_t limit) : inner_(inner), remaining_(limit) {}
  std::size_t read(std::span<std::uint8_t> buf) override;
  std::uint64_t remaining() const noexcept { return remaining_; }

 private:
  ByteSource& inner_;
  std::uint64_t remaining_;
};

/// Counts bytes passing through to the wrapped source.
class CountingSource final : public ByteSource {
 public:
  explicit CountingSource(ByteSource& inner) : inner_(inner) {}
  std::size_t read(std::span<std::uint8_t> buf) override {
    const std::size_t n = inner_.read(buf);
    bytes_read_ += n;
    return n;
  }
  std::uint64_t bytes_read() const noexcept { return bytes_read_; }

 private:
  ByteSource& inner_;
  std::uint64_t bytes_read_ = 0;
};

/// Read-only POSIX file.
class FileSource final : public ByteSource {
 public:
  explicit FileSource(const std::filesystem::path& path);
  FileSource(const FileSource&) = delete;
  FileSource& operator=(const FileSource&) = delete;
  ~FileSource() override;

  std::size_t read(std::span<std::uint8_t> buf) override;
  std::uint64_t size() const;

 private:
  int fd_ = -1;
  std::filesystem::path path_;
};

/// Output written to a temporary sibling of `destination` (same directory, so
/// the final rename is atomic). commit() fsyncs and renames; destruction
/// without commit() removes the temporary.
class AtomicOutputFile final : public ByteSink {
 public:
  explicit AtomicOutputFile(const std::filesystem::path& destination);
  AtomicOutputFile(const AtomicOutputFile&) = delete;
  AtomicOutputFile& operator=(const AtomicOutputFile&) = delete;
  ~AtomicOutputFile() override;

  void write(ByteView data) override;
  void commit();
  void discard() noexcept;

  const std::filesystem::path& temp_path() const noexcept { return temp_path_; }

 private:
  int fd_ = -1;
  std::filesystem::path destination_;
  std::filesystem::path temp_path_;
};

/// Reads a whole file into memory.
Bytes read_file(const std::filesystem::path& path);

/// Writes `data` to `path` atomically (temp + fsync + rename).
void write_file_atomic(const std::filesystem::path& path, ByteView data);

}  // namespace symfrog
