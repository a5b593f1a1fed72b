import numpy as np
import pytest

from holomem import ImageRaw, read_pgm, write_pgm
from holomem.errors import MalformedPgm


def img(pixels, width, height):
    return ImageRaw(width=width, height=height,
                    pixels=np.asarray(pixels, dtype=np.uint8).reshape(height, width))


class TestReadPgm:
    def test_minimal_p5(self, tmp_path):
        path = tmp_path / "a.pgm"
        path.write_bytes(b"P5\n2 1\n255\n" + bytes([0x00, 0xFF]))
        out = read_pgm(path)
        assert (out.width, out.height) == (2, 1)
        assert out.pixels.tolist() == [[0, 255]]

    def test_comments_and_whitespace(self, tmp_path):
        path = tmp_path / "b.pgm"
        path.write_bytes(b"P5 # binary gray\n# a comment line\n  3\t1 # dims\n255\n" + bytes([1, 2, 3]))
        out = read_pgm(path)
        assert out.pixels.tolist() == [[1, 2, 3]]

    def test_ascii_p2(self, tmp_path):
        path = tmp_path / "c.pgm"
        path.write_text("P2\n# ascii\n2 2\n255\n0 128\n255 7\n")
        out = read_pgm(path)
        assert out.pixels.tolist() == [[0, 128], [255, 7]]

    def test_wide_maxval_rejected(self, tmp_path):
        path = tmp_path / "d.pgm"
        path.write_bytes(b"P5\n1 1\n65535\n\x00\x00")
        with pytest.raises(MalformedPgm):
            read_pgm(path)

    def test_bad_magic(self, tmp_path):
        path = tmp_path / "e.pgm"
        path.write_bytes(b"P6\n1 1\n255\n\x00\x00\x00")
        with pytest.raises(MalformedPgm):
            read_pgm(path)

    def test_truncated_payload(self, tmp_path):
        path = tmp_path / "f.pgm"
        path.write_bytes(b"P5\n4 4\n255\n" + bytes(5))
        with pytest.raises(MalformedPgm):
            read_pgm(path)

    def test_truncated_header(self, tmp_path):
        path = tmp_path / "g.pgm"
        path.write_bytes(b"P5\n4")
        with pytest.raises(MalformedPgm):
            read_pgm(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            read_pgm(tmp_path / "nope.pgm")


class TestWritePgm:
    def test_exact_bytes_single_pixel(self, tmp_path):
        path = tmp_path / "w.pgm"
        write_pgm(img([7], 1, 1), path)
        assert path.read_bytes() == b"P5\n1 1\n255\n\x07"

    def test_round_trip(self, tmp_path):
        rng = np.random.default_rng(41)
        src = img(rng.integers(0, 256, 15 * 7), 15, 7)
        path = tmp_path / "rt.pgm"
        write_pgm(src, path)
        back = read_pgm(path)
        assert np.array_equal(back.pixels, src.pixels)

    def test_byte_deterministic(self, tmp_path):
        rng = np.random.default_rng(42)
        src = img(rng.integers(0, 256, 64), 8, 8)
        p1, p2 = tmp_path / "x1.pgm", tmp_path / "x2.pgm"
        write_pgm(src, p1)
        write_pgm(src, p2)
        assert p1.read_bytes() == p2.read_bytes()
