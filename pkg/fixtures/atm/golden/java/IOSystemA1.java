import java.io.*;
import javax.swing.*;

public class IOSystemA1 {
    private HashTable ioActions = new HashTable();

    public IOSystemA1() {
    }
}
