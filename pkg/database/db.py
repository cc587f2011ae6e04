import logging
from contextlib import contextmanager
from pathlib import Path
from typing import Generator, List, Optional

from sqlalchemy import asc, create_engine, desc
from sqlalchemy.orm import Session, sessionmaker

from database.models import Base
from database.models.run_models import InequalityRecord, RunRecord
from utils.settings import DATABASE_URL, WORKSPACE_DIR

logger = logging.getLogger(__name__)


def _connect_args(db_url: Optional[str]) -> dict:
    """Get connection arguments based on database type"""
    if db_url and db_url.startswith("sqlite"):
        return {"check_same_thread": False}
    return {}


class DatabaseManager:
    """
    Run ledger: connection management plus repository methods for recorded runs.

    Every CLI invocation may be stored with its resolved config, exit code and the
    per-inequality summaries; the first constant estimate per (inequality, sweep)
    serves as the regression baseline.
    """

    def __init__(self, database_url: Optional[str] = None):
        """
        Args:
            database_url: Database connection URL (defaults to DATABASE_URL from settings, or SQLite in the workspace)
        """
        if database_url is None:
            database_url = DATABASE_URL

        if database_url is None:
            db_path = WORKSPACE_DIR / "strongsum.db"
            database_url = f"sqlite:///{db_path}"

        self.database_url = database_url
        self.engine = create_engine(
            database_url,
            pool_pre_ping=True,
            connect_args=_connect_args(database_url),
            echo=False
        )
        self.SessionLocal = sessionmaker(
            bind=self.engine,
            autocommit=False,
            autoflush=False,
            expire_on_commit=False
        )

    def init_db(self):
        """Create the ledger tables (and the SQLite directory) if missing"""
        if self.database_url.startswith("sqlite:///"):
            db_path = Path(self.database_url.replace("sqlite:///", ""))
            db_path.parent.mkdir(parents=True, exist_ok=True)
        Base.metadata.create_all(bind=self.engine)
        logger.debug(f"Run ledger ready at {self.database_url}")

    @contextmanager
    def get_session(self) -> Generator[Session, None, None]:
        """
        Context manager for database sessions.

        Usage:
            with db_manager.get_session() as session:
                session.add(obj)
        """
        session = self.SessionLocal()
        try:
            yield session
            session.commit()
        except Exception:
            session.rollback()
            raise
        finally:
            session.close()

    # ==================== Run Repository Methods ====================

    def save_run(
            self,
            subcommand: str,
            config: dict,
            exit_code: int,
            execution_time: float,
            target: Optional[str] = None,
            sweep_name: Optional[str] = None,
            sweep_hash: Optional[str] = None,
            output_path: Optional[str] = None,
            results: Optional[List[dict]] = None
    ) -> int:
        """
        Record one CLI run.

        Args:
            subcommand: CLI subcommand name
            config: Resolved run configuration (JSON-serializable)
            exit_code: Process exit code
            execution_time: Wall time in seconds
            target: Inequality id or function name the run targeted
            sweep_name: Sweep preset or file stem
            sweep_hash: sweep_fingerprint of the resolved sweep
            output_path: CSV written by the run
            results: Per-inequality summaries (inequality_id, verdict, sup_ratio,
                refinement_drift, configuration_count, constant_estimate)

        Returns:
            int: Run ID
        """
        with self.get_session() as session:
            run = RunRecord(
                subcommand=subcommand,
                target=target,
                sweep_name=sweep_name,
                sweep_hash=sweep_hash,
                config=config,
                exit_code=exit_code,
                output_path=output_path,
                execution_time=execution_time
            )
            run.results = [InequalityRecord(**result) for result in results or []]
            session.add(run)
            session.flush()
            return run.id

    def get_recent_runs(self, limit: int = 20) -> List[RunRecord]:
        with self.get_session() as session:
            return session.query(RunRecord) \
                .order_by(desc(RunRecord.created_at), desc(RunRecord.id)) \
                .limit(limit) \
                .all()

    def get_run_by_id(self, run_id: int) -> Optional[RunRecord]:
        with self.get_session() as session:
            return session.query(RunRecord) \
                .filter(RunRecord.id == run_id) \
                .first()

    def get_baseline(
            self,
            inequality_id: str,
            sweep_name: str,
            sweep_hash: Optional[str] = None
    ) -> Optional[float]:
        """
        Earliest recorded constant estimate for an inequality on a sweep.

        With sweep_hash set, only runs on the identically resolved sweep count.

        Returns:
            float or None when no run has recorded one yet
        """
        with self.get_session() as session:
            query = session.query(InequalityRecord) \
                .join(RunRecord, InequalityRecord.run_fk == RunRecord.id) \
                .filter(
                InequalityRecord.inequality_id == inequality_id,
                InequalityRecord.constant_estimate.isnot(None),
                RunRecord.sweep_name == sweep_name
            )
            if sweep_hash is not None:
                query = query.filter(RunRecord.sweep_hash == sweep_hash)
            record = query \
                .order_by(asc(RunRecord.created_at), asc(RunRecord.id)) \
                .first()

            return record.constant_estimate if record else None


# ==================== Global Instance ====================

db_manager = DatabaseManager()


def init_db():
    """Initialize the default ledger"""
    db_manager.init_db()
