#include "mcx/image.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cstring>
#include <stdexcept>

namespace mcx {

ImageFile::ImageFile(const std::filesystem::path& path) {
    fd_ = ::open(path.c_str(), O_RDONLY);
    if (fd_ < 0) throw std::runtime_error("cannot open image: " + path.string());
    struct stat st {};
    if (fstat(fd_, &st) != 0) {
        ::close(fd_);
        fd_ = -1;
        throw std::runtime_error("cannot stat image: " + path.string());
    }
    file_size_ = static_cast<uint64_t>(st.st_size);
}

ImageFile::~ImageFile() {
    if (fd_ >= 0) ::close(fd_);
}

size_t ImageFile::read_at(uint64_t offset, uint8_t* buf, size_t len) const {
    size_t done = 0;
    while (done < len) {
        ssize_t got = ::pread(fd_, buf + done, len - done,
                              static_cast<off_t>(offset + done));
        if (got < 0) {
            if (errno == EINTR) continue;
            throw std::runtime_error("image read error at offset " + std::to_string(offset));
        }
        if (got == 0) break;  // EOF
        done += static_cast<size_t>(got);
    }
    return done;
}

Bytes DiskImage::read(uint64_t offset, size_t len) const {
    if (offset >= size) return {};
    uint64_t avail = size - offset;
    if (len > avail) len = static_cast<size_t>(avail);
    Bytes out(len);
    size_t got = file->read_at(offset, out.data(), len);
    out.resize(got);
    return out;
}

DiskImage open_image(const std::filesystem::path& path, Log& log, uint32_t sector_size) {
    if (sector_size == 0) throw std::runtime_error("sector_size must be nonzero");
    auto file = std::make_shared<ImageFile>(path);
    uint64_t raw = file->file_size();
    uint64_t rounded = raw - raw % sector_size;
    if (rounded == 0) throw std::runtime_error("empty image: " + path.string());
    if (rounded != raw)
        log.warn("image size " + std::to_string(raw) + " is not a multiple of sector size " +
                 std::to_string(sector_size) + ", using " + std::to_string(rounded) + " bytes");
    DiskImage img;
    img.path = path.string();
    img.size = rounded;
    img.sector_size = sector_size;
    img.file = std::move(file);
    return img;
}

static bool is_power_of_two(uint32_t v) { return v != 0 && (v & (v - 1)) == 0; }

bool looks_like_fat_boot_sector(std::span<const uint8_t> sector) {
    if (sector.size() < 512) return false;
    const uint8_t* p = sector.data();
    // x86 jump at offset 0, then a plausible BPB.
    if (!(p[0] == 0xEB || p[0] == 0xE9)) return false;
    uint16_t bps = rd_le16(p + 11);
    if (bps != 512 && bps != 1024 && bps != 2048 && bps != 4096) return false;
    uint8_t spc = p[13];
    if (!is_power_of_two(spc) || spc > 128) return false;
    if (rd_le16(p + 14) == 0) return false;  // reserved sectors
    uint8_t nfats = p[16];
    if (nfats == 0 || nfats > 4) return false;
    uint32_t total = rd_le16(p + 19) ? rd_le16(p + 19) : rd_le32(p + 32);
    return total != 0;
}

std::vector<PartitionEntry> parse_partitions(const DiskImage& img, Log& log) {
    std::vector<PartitionEntry> out;
    Bytes sector0 = img.read(0, 512);
    if (sector0.size() < 512) return out;

    auto whole_image_entry = [&]() {
        PartitionEntry e;
        e.index = 0;
        e.start_lba = 0;
        e.length = img.size / img.sector_size;
        e.type_code = 0;
        e.synthetic = true;
        return e;
    };

    // A FAT-formatted superfloppy carries the 0x55AA boot signature too, so
    // the boot-sector shape decides before the MBR interpretation is tried.
    if (looks_like_fat_boot_sector(sector0)) {
        log.info("superfloppy layout detected (FAT boot sector at offset 0)");
        out.push_back(whole_image_entry());
        return out;
    }

    bool has_sig = sector0[510] == 0x55 && sector0[511] == 0xAA;
    if (!has_sig) return out;

    uint64_t total_sectors = img.size / img.sector_size;
    for (int i = 0; i < 4; ++i) {
        const uint8_t* e = sector0.data() + 446 + 16 * i;
        uint8_t type = e[4];
        uint64_t lba = rd_le32(e + 8);
        uint64_t len = rd_le32(e + 12);
        if (type == 0 || len == 0) continue;
        if (lba >= total_sectors || lba + len > total_sectors) {
            log.warn("partition " + std::to_string(i) + " exceeds image bounds, skipped");
            continue;
        }
        bool overlaps = false;
        for (const auto& prev : out) {
            if (lba < prev.start_lba + prev.length && prev.start_lba < lba + len) {
                overlaps = true;
                break;
            }
        }
        if (overlaps) {
            log.warn("partition " + std::to_string(i) + " overlaps an earlier entry, skipped");
            continue;
        }
        PartitionEntry pe;
        pe.index = i;
        pe.start_lba = lba;
        pe.length = len;
        pe.type_code = type;
        out.push_back(pe);
    }
    return out;
}

}  // namespace mcx
