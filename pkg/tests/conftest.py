from __future__ import annotations

from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parent.parent
BELL_PATH = REPO_ROOT / "demos" / "bell.qhdl"


@pytest.fixture(scope="session")
def bell_source() -> str:
    return BELL_PATH.read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def bell_path() -> Path:
    return BELL_PATH


# Crafted sources that each break exactly one circuit rule.  The fan-out case
# piles both extra endpoints onto one net so a single diagnostic covers it.
RULE_I_SOURCE = """
library qhdl;
use qhdl.std.all;
entity fanout is
  port ( clk: in bit; s_in: in bit; r1, r2: out bit );
end entity fanout;
architecture a of fanout is
  signal src, t1, t2, m1, m2: qbit;
begin
  set_a: qset port map ( clk => clk, d => m1, q => src, set => s_in );
  set_b: qset port map ( clk => clk, d => m2, q => src, set => s_in );
  g1: qnot port map ( d => src, q => t1 );
  g2: qnot port map ( d => src, q => t2 );
  meas_a: qmeasure port map ( clk => clk, d => t1, q => m1, result => r1 );
  meas_b: qmeasure port map ( clk => clk, d => t2, q => m2, result => r2 );
end architecture a;
"""

RULE_II_SOURCE = """
library qhdl;
use qhdl.std.all;
entity exposed is
  port ( clk: in bit; s_in: in bit; x: in qbit; r: out bit );
end entity exposed;
architecture a of exposed is
  signal t, m: qbit;
begin
  setter: qset port map ( clk => clk, d => m, q => t, set => s_in );
  meas: qmeasure port map ( clk => clk, d => t, q => m, result => r );
end architecture a;
"""

RULE_III_SOURCE = """
library qhdl;
use qhdl.std.all;
entity classical is
  port ( clk: in bit; r: out bit );
end entity classical;
architecture a of classical is
begin
  ticker: process (clk) is begin end process ticker;
end architecture a;
"""
