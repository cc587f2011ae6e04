from __future__ import annotations

from datetime import datetime
from typing import Optional

from sqlalchemy import DateTime, Float, ForeignKey, Integer, JSON, String
from sqlalchemy.orm import Mapped, mapped_column, relationship

from database.models import Base


class RunRecord(Base):
    __tablename__ = "runs"

    id: Mapped[int] = mapped_column(Integer, primary_key=True, autoincrement=True)

    subcommand: Mapped[str] = mapped_column(String, nullable=False, index=True)
    target: Mapped[Optional[str]] = mapped_column(String, nullable=True)
    sweep_name: Mapped[Optional[str]] = mapped_column(String, nullable=True, index=True)
    # digest of the resolved sweep; baselines are only read from runs with the same one
    sweep_hash: Mapped[Optional[str]] = mapped_column(String, nullable=True, index=True)

    config: Mapped[dict] = mapped_column(JSON, nullable=False)
    exit_code: Mapped[int] = mapped_column(Integer, nullable=False)
    output_path: Mapped[Optional[str]] = mapped_column(String, nullable=True)
    execution_time: Mapped[float] = mapped_column(Float, nullable=False)

    created_at: Mapped[datetime] = mapped_column(DateTime, default=datetime.utcnow, nullable=False)

    results: Mapped[list["InequalityRecord"]] = relationship(
        "InequalityRecord",
        back_populates="run",
        cascade="all, delete-orphan",
        lazy="selectin",
    )


class InequalityRecord(Base):
    __tablename__ = "inequality_results"

    id: Mapped[int] = mapped_column(Integer, primary_key=True, autoincrement=True)

    run_fk: Mapped[int] = mapped_column(Integer, ForeignKey("runs.id"), nullable=False, index=True)

    inequality_id: Mapped[str] = mapped_column(String, nullable=False, index=True)
    verdict: Mapped[str] = mapped_column(String, nullable=False)
    sup_ratio: Mapped[float] = mapped_column(Float, nullable=False)
    refinement_drift: Mapped[float] = mapped_column(Float, nullable=False)
    configuration_count: Mapped[int] = mapped_column(Integer, nullable=False)
    # estimate_constant for BoundedRatio reports, the regression baseline
    constant_estimate: Mapped[Optional[float]] = mapped_column(Float, nullable=True)

    run: Mapped["RunRecord"] = relationship("RunRecord", back_populates="results")
