"""
peewee store of CLI run reports
"""

# pylint: disable=R0903

import json

from loguru import logger
from peewee import (
    AutoField,
    BooleanField,
    CharField,
    DoesNotExist,
    FloatField,
    ForeignKeyField,
    IntegerField,
    IntegrityError,
    Model,
    SqliteDatabase,
    TextField,
)


db = SqliteDatabase(None, pragmas={"foreign_keys": 1})


class BaseModel(Model):
    """
    model bound to the deferred history database
    """

    class Meta:
        """
        initialize database
        """

        database = db


class RunModel(BaseModel):
    """
    one CLI invocation
    """

    run_id = AutoField()
    command = CharField(max_length=250)
    schema = CharField(max_length=50)
    seed = IntegerField()
    exit_code = IntegerField()
    digests = TextField()
    report = TextField()


class CheckModel(BaseModel):
    """
    one named check of a run
    """

    check_id = AutoField()
    run = ForeignKeyField(RunModel, backref="checks", on_delete="CASCADE")
    name = CharField(max_length=250)
    passed = BooleanField()
    residual = FloatField(null=True)


def open_history(path):
    """
    Bind the models to an SQLite file and create the tables
    """
    if not db.is_closed():
        db.close()
    db.init(path, pragmas={"foreign_keys": 1})
    db.connect()
    db.create_tables([RunModel, CheckModel])
    logger.debug("history database {} opened", path)
    return db


class RunHistory:
    """
    Collection of recorded runs
    """

    def __init__(self, database):
        self.database = database
        logger.debug("run history linked")

    def add_run(self, report, exit_code):
        """
        Store a report and its checks; returns the new run id or False
        """
        try:
            with self.database.transaction():
                run = RunModel.create(
                    command=" ".join(report.get("command", [])),
                    schema=report.get("schema", ""),
                    seed=report.get("seed", 0),
                    exit_code=exit_code,
                    digests=json.dumps(report.get("inputs", {}), sort_keys=True),
                    report=json.dumps(report, sort_keys=True),
                )
                for check in report.get("checks", []):
                    CheckModel.create(
                        run=run,
                        name=check["name"],
                        passed=check["passed"],
                        residual=check.get("residual"),
                    )
                logger.debug("run {} recorded", run.run_id)
                return run.run_id
        except IntegrityError:
            logger.debug("run could not be recorded")
            return False

    def search_run(self, run_id):
        """
        Searches for a run
        """
        try:
            with self.database.transaction():
                result = RunModel.get(RunModel.run_id == run_id)
                logger.debug("run {} found", run_id)
                return result
        except DoesNotExist:
            logger.debug("run {} cannot be found", run_id)
            return False

    def delete_run(self, run_id):
        """
        Deletes a run together with its checks
        """
        with self.database.transaction():
            result = self.search_run(run_id)
            if not result:
                return False
            result.delete_instance()
            logger.debug("run {} deleted", run_id)
            return True

    def list_runs(self):
        """
        Summaries of every stored run, oldest first
        """
        rows = []
        for run in RunModel.select().order_by(RunModel.run_id):
            checks = list(run.checks)
            rows.append(
                {
                    "run_id": run.run_id,
                    "command": run.command,
                    "exit_code": run.exit_code,
                    "checks": len(checks),
                    "failed": sum(1 for check in checks if not check.passed),
                }
            )
        return rows
